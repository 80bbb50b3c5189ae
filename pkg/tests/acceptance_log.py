"""Per-criterion pass/fail records filled in by test_acceptance.py."""

LOG: dict = {}


def record(key: int, ok: bool, msg: str) -> None:
    prev = LOG.get(str(key))
    if prev is not None:
        ok = ok and prev[0]
        msg = "; ".join(m for m in (prev[1], msg) if m)
    LOG[str(key)] = (bool(ok), msg)
    print(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {msg}")

"""A 1D code that corrects bursts of length 5 carrying at most two errors."""

from clustercodes import search_limited_weight
from clustercodes.components import burst_count, decode_positions
from clustercodes.oracle import verify_component_roundtrip

code = search_limited_weight(5, 2, 63)
print(code.describe())
print(f"length {code.n}, redundancy {code.r}")
print("in-contract bursts:", burst_count(code.n, 5, code.cyclic, tmax=2))

err = {20, 23}
s = code.syndrome(err)
print(f"errors at {sorted(err)} -> syndrome {s:#x} -> decoded {sorted(decode_positions(code, s))}")

print(verify_component_roundtrip(code).line())

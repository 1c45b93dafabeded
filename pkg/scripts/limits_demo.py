"""String limits, and natural/monotone limits of a few game sequences."""
from gameseries import kernel as K
from gameseries.limits import (
    Boundary, Const, Interleave, PrefixesOf, TString, TEMPLATES, WithHead, empirical_string_limit, string_limit,
)

T = TString.parse

families = [
    PrefixesOf(T("(+-)^w")),
    Interleave(PrefixesOf(T("(+-)^w")), PrefixesOf(T("(-+)^w"))),
    WithHead(tuple(T(s) for s in ["+", "+-", "+++", "+-"]), Interleave(PrefixesOf(T("+^w")), Const(T("+-")))),
    Boundary("+", "-", "-"),
]
for fam in families:
    print(f"{fam.name:60s} -> {string_limit(fam)}")

print("empirical:", empirical_string_limit([T(s) for s in ["+", "++-", "+++-", "++++-"]], 3))

for name, make in TEMPLATES.items():
    t = make()
    for kind in ("nlim", "mlim"):
        try:
            t.spot_check(kind)
        except AssertionError as e:
            print(f"{name} {kind}: spot check failed ({e})")
            continue
        left = [K.show(g) for n in range(4) for g in t.allowed(kind, n, K.LEFT)]
        print(f"{name:16s} {kind}: Left options for n<4: {left}")

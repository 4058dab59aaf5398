"""Glue the affine D4 charts, verify the stack and show a few chart-2 images."""
from quiverforge.stack import builtin_d4_stack, commutativity_check, verify_stack

s = builtin_d4_stack()
rep = verify_stack(s, s.default_effort)
print(rep.summary())

G = s.G("0", "2", {"0", "2"})
for x in ("X2", "Y2", "Z2"):
    print(x, "->", G.target.format(G.apply_scalar(G.source.arrow(x))))

proved, _ = commutativity_check(s.algebra("2", {"2"}), 10, G)
print("commuting pairs proved through G02:", proved)

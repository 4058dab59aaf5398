"""Three points in the plane: ADHM data, stability, monad and its jumps."""
from fractions import Fraction

from quiverforge.models import adhm
from quiverforge.monad import build_adhm_monad, evaluate_adhm_at_point, verify_d_squared
from quiverforge.representation import MatrixRep, moment_map_is_zero
from quiverforge.stability import is_stable

A, eps = adhm()
A0, _ = adhm(framed=False)
pts = [(0, 0), (1, 2), (-1, 1)]
n = len(pts)
B1 = [[Fraction(pts[k][0]) if c == k else 0 for c in range(n)] for k in range(n)]
B2 = [[Fraction(pts[k][1]) if c == k else 0 for c in range(n)] for k in range(n)]
rho = MatrixRep(A.quiver, {"0": n, "f": 1}, {"x": B1, "y": B2, "i": [[1], [2], [3]]})

print("moment map zero:", moment_map_is_zero(rho, eps))
print("stable (zeta < 0):", is_stable(rho, [-1]).status)
C = build_adhm_monad(rho, A0, eps)
print("ranks:", C.ranks(), "d^2:", verify_d_squared(C, 6).summary())
print("middle cohomology, rows y = 2, 1, 0 and columns x = -1, 0, 1:")
for y in range(2, -1, -1):
    print(" ".join(str(evaluate_adhm_at_point(C, x, y).cohomology) for x in range(-1, 2)))

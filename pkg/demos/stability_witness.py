"""A destabilizing subspace found by the closure algorithm, then rechecked."""
from quiverforge.models import adhm
from quiverforge.representation import MatrixRep
from quiverforge.stability import is_stable, verify_witness

A, _ = adhm()
rho = MatrixRep(A.quiver, {"0": 2, "f": 1},
                {"x": [[1, 0], [0, 2]], "y": [[0, 0], [0, 0]], "i": [[1], [0]]})
for zeta in ([-1], [1]):
    v = is_stable(rho, zeta)
    print("zeta", zeta, "->", v.status)
    if v.witness is not None:
        print("  witness", v.witness.to_dict(), "->", verify_witness(rho, v.witness, zeta).status)

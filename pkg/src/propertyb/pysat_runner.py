"""Competition-style command-line SAT solver backed by python-sat.

    python -m propertyb.pysat_runner instance.cnf

Prints ``s SATISFIABLE`` / ``s UNSATISFIABLE`` and ``v`` model lines and
exits 10 / 20, so it can serve as the external solver command when no
native solver binary is installed.  Requires the ``sat`` extra.
"""

import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) < 1:
        print("usage: python -m propertyb.pysat_runner FILE [SOLVER]", file=sys.stderr)
        return 1
    name = argv[1] if len(argv) > 1 else "cadical153"
    formula = CNF(from_file=argv[0])
    with Solver(name=name, bootstrap_with=formula.clauses) as solver:
        if solver.solve():
            print("s SATISFIABLE")
            print("v " + " ".join(map(str, solver.get_model())) + " 0")
            return 10
        print("s UNSATISFIABLE")
        return 20


if __name__ == "__main__":
    sys.exit(main())

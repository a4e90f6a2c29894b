"""Symmetrised momentum sweep at fixed angle against the Moller formula."""

from _common import parser, save
from momentum_sweep import sweep


def main():
    ap = parser(__doc__, "moller_momentum")
    ap.add_argument("--theta", type=float, default=90.0, help="degrees")
    ap.add_argument("--p-min", type=float, default=0.03)
    ap.add_argument("--p-max", type=float, default=19.0)
    ap.add_argument("--n-p", type=int, default=40)
    ap.add_argument("--order", type=int, choices=(1, 2), default=1)
    args = ap.parse_args()

    rows = sweep(args, True)
    save(args, ["p_mev", "model", "rutherford", "rutherford_reduced_mass", "moller"], rows)
    for p, m, _, _, mo in rows[:: max(1, len(rows) // 8)]:
        print(f"p = {p:8.4f} MeV  model/Moller = {m / mo:9.4f}")


if __name__ == "__main__":
    main()

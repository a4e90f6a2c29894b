"""Momentum sweep at fixed angle against the Rutherford formula, first-order phase shifts."""

import math

import numpy as np

from _common import parser, save
from coulomb_pt import XSecConfig, build_table, differential_cross_section, make_kinematics, moller, rutherford
from coulomb_pt.cross_section import rutherford_reduced_mass


def sweep(args, symmetrize):
    cfg = XSecConfig(epsilon=args.epsilon, symmetrize=symmetrize)
    theta = math.radians(args.theta)
    rows = []
    for p in np.geomspace(args.p_min, args.p_max, args.n_p):
        kin = make_kinematics(float(p))
        table = build_table(kin, cfg.l_max, 0 if args.order == 1 else 50, order=args.order)
        model = differential_cross_section(theta, table, cfg)
        rows.append((float(p), model, rutherford(theta, kin), rutherford_reduced_mass(theta, kin), moller(theta, kin)))
    return rows


def main():
    ap = parser(__doc__, "momentum_sweep")
    ap.add_argument("--theta", type=float, default=90.0, help="degrees")
    ap.add_argument("--p-min", type=float, default=0.03)
    ap.add_argument("--p-max", type=float, default=19.0)
    ap.add_argument("--n-p", type=int, default=40)
    ap.add_argument("--order", type=int, choices=(1, 2), default=1)
    ap.add_argument("--symmetrize", action="store_true")
    args = ap.parse_args()

    rows = sweep(args, args.symmetrize)
    save(args, ["p_mev", "model", "rutherford", "rutherford_reduced_mass", "moller"], rows)
    for p, m, r, rr, mo in rows[:: max(1, len(rows) // 8)]:
        print(f"p = {p:8.4f} MeV  model/R = {m / r:9.4f}  model/R_reduced = {m / rr:9.4f}  model/Moller = {m / mo:9.4f}")


if __name__ == "__main__":
    main()

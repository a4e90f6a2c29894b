"""Angular distribution at fixed momentum against the Rutherford formula."""

import math

import numpy as np

from _common import parser, save
from coulomb_pt import XSecConfig, build_table, differential_cross_section, make_kinematics, moller
from coulomb_pt.cross_section import radians_mirrored, rutherford, rutherford_reduced_mass


def angular_rows(args):
    kin = make_kinematics(args.p_mev)
    cfg = XSecConfig(epsilon=args.epsilon, symmetrize=args.symmetrize)
    table = build_table(kin, cfg.l_max, 50, order=args.order)
    deg = np.arange(args.theta_min, args.theta_max + 0.5 * args.theta_step, args.theta_step)
    theta = radians_mirrored(deg)
    model = differential_cross_section(theta, table, cfg)
    nan = math.nan
    rows = []
    for d, t, m in zip(deg, theta, model):
        r = rutherford(t, kin) if t > 0 else nan
        mo = moller(t, kin) if 0 < t < math.pi else nan
        rr = rutherford_reduced_mass(t, kin) if t > 0 else nan
        rows.append((float(d), m, r, rr, mo))
    return rows


def add_arguments(ap, p_mev, symmetrize):
    ap.add_argument("--p-mev", type=float, default=p_mev)
    ap.add_argument("--theta-min", type=float, default=5.0)
    ap.add_argument("--theta-max", type=float, default=175.0)
    ap.add_argument("--theta-step", type=float, default=5.0)
    ap.add_argument("--order", type=int, choices=(1, 2), default=2)
    ap.add_argument("--symmetrize", action="store_true", default=symmetrize)


def main():
    ap = parser(__doc__, "angular_scan")
    add_arguments(ap, 5.0, False)
    args = ap.parse_args()
    rows = angular_rows(args)
    save(args, ["theta_deg", "model", "rutherford", "rutherford_reduced_mass", "moller"], rows)
    for d, m, r, rr, _ in rows[::4]:
        print(f"theta = {d:6.1f}  model/R = {m / r:9.4f}  model/R_reduced = {m / rr:9.4f}")


if __name__ == "__main__":
    main()

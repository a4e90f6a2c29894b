"""Cross section against the time-shift parameter delta at fixed angle."""

import math

import numpy as np

from _common import parser, save
from coulomb_pt import XSecConfig, build_table, delta_profile, make_kinematics


def main():
    ap = parser(__doc__, "delta_profile")
    ap.add_argument("--p-mev", type=float, default=0.02)
    ap.add_argument("--theta", type=float, default=90.0, help="degrees")
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("--half-width", type=float, default=5.0)
    args = ap.parse_args()

    kin = make_kinematics(args.p_mev)
    cfg = XSecConfig(epsilon=args.epsilon)
    table = build_table(kin, cfg.l_max, 50)
    n = int(round(args.half_width / args.step))
    grid = np.arange(-n, n + 1) * args.step
    prof = delta_profile(math.radians(args.theta), table, cfg, grid)
    save(args, ["delta", "xsec"], list(zip(prof.delta.tolist(), prof.xsec.tolist())), [("delta_star", prof.delta_star)])
    half = prof.delta[prof.xsec >= 0.5 * prof.xsec.max()]
    print(f"delta* = {prof.delta_star:+.3f}, half-maximum range [{half.min():+.2f}, {half.max():+.2f}]")


if __name__ == "__main__":
    main()

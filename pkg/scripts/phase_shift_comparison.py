"""First- and second-order phase shifts against arg Gamma(l + 1 + i eta) at p = 0.02 MeV."""

import numpy as np

from _common import parser, save
from coulomb_pt import build_table, make_kinematics
from coulomb_pt.special_functions import coulomb_sigma_exact


def main():
    ap = parser(__doc__, "phase_shift_comparison")
    ap.add_argument("--p-mev", type=float, default=0.02)
    ap.add_argument("--l-max", type=int, default=50)
    args = ap.parse_args()

    kin = make_kinematics(args.p_mev)
    table = build_table(kin, args.l_max, args.l_max)
    exact = np.array([coulomb_sigma_exact(l, kin.eta) for l in range(args.l_max + 1)])
    d1, d2 = table.delta1_bar_array(), table.delta2_array()
    rows = [(l, d1[l], d2[l], exact[l], d1[l] + d2[l] - exact[l]) for l in range(args.l_max + 1)]
    save(args, ["l", "delta1_bar", "delta2", "sigma_exact", "residual"], rows)

    print(f"eta = {kin.eta:.5f}, beta = {kin.beta:.5f}")
    print(f"max |d1bar - sigma| (l >= 1): {np.max(np.abs(d1[1:] - exact[1:])):.3e} rad")
    print(f"max |d1bar + d2 - sigma| (l >= 1): {np.max(np.abs(d1[1:] + d2[1:] - exact[1:])):.3e} rad")
    print(f"max |d2 / sigma| (l >= 1): {np.max(np.abs(d2[1:] / exact[1:])):.3e}")


if __name__ == "__main__":
    main()

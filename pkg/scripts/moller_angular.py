"""Symmetrised angular distribution at p = 5 MeV against the Moller formula."""

import numpy as np

from _common import parser, save
from angular_scan import add_arguments, angular_rows


def main():
    ap = parser(__doc__, "moller_angular")
    add_arguments(ap, 5.0, True)
    args = ap.parse_args()
    rows = angular_rows(args)
    save(args, ["theta_deg", "model", "rutherford", "rutherford_reduced_mass", "moller"], rows)
    ratio = np.array([m / mo for d, m, _, _, mo in rows if 30 <= d <= 150])
    print(f"model/Moller on [30, 150] deg: min {ratio.min():.4f}, max {ratio.max():.4f}")


if __name__ == "__main__":
    main()

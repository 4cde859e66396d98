"""Theta-null diagnostic on a product of elliptic curves and on the genus-5 Hessian shipped with the tests."""
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from riemann_theta import numerical_rank, schottky_null

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from reference_hessian import HESSIAN  # noqa: E402


@dataclass
class Config:
    taus: tuple = (1j, 0.5 + 0.866j)
    rel_tols: tuple = (1e-10, 1e-8, 1e-6, 1e-4)


def main(cfg: Config = Config()):
    tau = np.diag(cfg.taus)
    report = schottky_null(tau)
    if report is None:
        print("no vanishing even theta constant")
    else:
        print(f"vanishing characteristic {report.characteristic}, |theta| = {abs(report.theta_value):.1e}")
        print(f"Hessian singular values {np.array(report.singular_values)}")
        print(f"rank {report.rank}")
    sv = numerical_rank(HESSIAN)[1]
    print(f"\n6-digit genus-5 Hessian: singular values {np.array(sv)}")
    for t in cfg.rel_tols:
        print(f"  rel_tol {t:.0e}: rank {numerical_rank(HESSIAN, rel_tol=t)[0]}")


if __name__ == "__main__":
    main()

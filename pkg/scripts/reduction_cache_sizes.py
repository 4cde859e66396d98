"""Compare N=0 summation-set sizes with and without Siegel reduction."""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from riemann_theta import build_context, random_siegel
from riemann_theta.errors import EllipsoidTooLarge


@dataclass
class SizeConfig:
    g: int = 5
    samples: int = 20
    eps: float = 1e-12
    seed: int = 0


def cache_size(tau, eps, siegel):
    try:
        return len(build_context(tau, eps=eps, siegel=siegel).caches[0])
    except EllipsoidTooLarge:
        return math.inf


def run(cfg: SizeConfig):
    raw, red = [], []
    for i in range(cfg.samples):
        tau = random_siegel(cfg.g, cfg.seed + i)
        raw.append(cache_size(tau, cfg.eps, False))
        red.append(cache_size(tau, cfg.eps, True))
        print(f"seed {cfg.seed + i:4d}  unreduced {raw[-1]:>9}  reduced {red[-1]:>9}")
    print(f"median  unreduced {np.median(raw):.0f}  reduced {np.median(red):.0f}")
    return raw, red


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--g", type=int, default=SizeConfig.g)
    ap.add_argument("--samples", type=int, default=SizeConfig.samples)
    ap.add_argument("--eps", type=float, default=SizeConfig.eps)
    ap.add_argument("--seed", type=int, default=SizeConfig.seed)
    a = ap.parse_args()
    run(SizeConfig(a.g, a.samples, a.eps, a.seed))

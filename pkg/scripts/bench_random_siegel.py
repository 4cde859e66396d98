"""Time context construction plus all even theta constants on random Riemann matrices."""
import argparse
import json
from dataclasses import asdict, dataclass

from riemann_theta.cli import bench


@dataclass
class BenchConfig:
    genera: tuple = (2, 3, 4, 5)
    count: int = 20
    eps: float = 1e-12
    seed: int = 0


def run(cfg: BenchConfig):
    rows = []
    for g in cfg.genera:
        mean, std, _ = bench(g, cfg.count, cfg.eps, cfg.seed)
        rows.append({"g": g, "mean_s": mean, "std_s": std})
        print(f"g={g}  mean {mean:.3f} s  std {std:.3f} s")
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--genera", type=int, nargs="+", default=list(BenchConfig.genera))
    ap.add_argument("--count", type=int, default=BenchConfig.count)
    ap.add_argument("--eps", type=float, default=BenchConfig.eps)
    ap.add_argument("--seed", type=int, default=BenchConfig.seed)
    ap.add_argument("--json", help="write results to this file")
    a = ap.parse_args()
    cfg = BenchConfig(tuple(a.genera), a.count, a.eps, a.seed)
    rows = run(cfg)
    if a.json:
        with open(a.json, "w") as fh:
            json.dump({"config": asdict(cfg), "results": rows}, fh, indent=2)

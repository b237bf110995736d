"""Regenerate tests/golden/synthetic.json from the default synthetic benchmark.

Only rerun this deliberately: the golden values are regression oracles.
"""
import json
import pathlib
import time

from templink.experiments import BenchmarkConfig, run_benchmark

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "golden" / "synthetic.json"


def main():
    start = time.perf_counter()
    result = run_benchmark(BenchmarkConfig())
    result["elapsed_s_at_freeze"] = round(time.perf_counter() - start, 1)
    OUT.write_text(json.dumps(result, indent=2, sort_keys=True) + "\n")
    for key in ("positives", "categories", "auc_pa", "auc_aa", "best_eps", "best_eps_auc",
                "auc_ref_eps", "best_theta", "best_theta_auc"):
        print(f"{key:>16} {result[key]}")


if __name__ == "__main__":
    main()

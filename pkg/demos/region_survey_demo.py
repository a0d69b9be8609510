"""Classify the sign of the diffusive response over a small gain/offset box.

Runs a 300-point random survey of p_a(t, beta) on the window (0, 4], prints
the class counts and a few example points near the positivity boundary, and
notes how the analytic wedge (a*beta - a + 1 < 0) short-circuits the
expensive check.

Usage: python3 demos/region_survey_demo.py
"""

from dataclasses import replace

from pointfeedback import run_survey
from pointfeedback.presets import SURVEY_PRESETS

CFG = replace(
    SURVEY_PRESETS["fig71"],
    n_points=300,
    seed=7,
)


def main() -> None:
    result = run_survey(CFG)
    print(f"surveyed {result.summary['n_points']} points on "
          f"a in {CFG.a_range}, beta in {CFG.beta_range}")
    for cls, count in sorted(result.summary["counts"].items()):
        print(f"  {cls:24s} {count}")

    print("\nfirst points of each class:")
    seen = set()
    for p in result.points:
        if p.classification in seen:
            continue
        seen.add(p.classification)
        print(f"  a={p.a:7.4f} beta={p.beta:7.4f} -> {p.classification:24s}"
              f" min={p.min_value:+.3e} at t={p.argmin_t:.3f}")


if __name__ == "__main__":
    main()

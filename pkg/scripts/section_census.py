#!/usr/bin/env python3
"""Summarize every hyperplane section of GL_n(F_q) by the rank of its normal."""

from __future__ import annotations

import argparse
import json

from src.fields import field_new
from src.services.formulas import gamma
from src.services.sections import section_census


def report(n, q, full_c=False, workers=1):
    census = section_census(n, field_new(q), full_c=full_c, workers=workers)
    result = {"n": n, "q": q, "gamma": gamma(n, q), "ranks": []}
    for r, group in census.groupby("rank"):
        result["ranks"].append({
            "rank": int(r),
            "normals": int(group["index"].nunique()),
            "counts": sorted(int(c) for c in group["count"].unique()),
            "predicted": sorted(int(c) for c in group["predicted"].unique()),
            "all_match": bool(group["match"].all()),
        })
    return result


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--q", type=int, default=2)
    parser.add_argument("--full-c", action="store_true")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()
    print(json.dumps(report(args.n, args.q, args.full_c, args.workers), indent=2, sort_keys=True))

# Copyright 2026 The polarq authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generate a packing of n equal circles in the unit circle.

Inflation heuristic: grow the circle radius slowly while resolving
overlaps between circles and with the container. Not guaranteed optimal;
good enough for constellation use. The emitted radius is exactly half the
final minimum pairwise distance so the file is self-consistent.

Usage: python3 make_packing.py <n> <out_path> [seed]
"""

import sys

import numpy as np


def pack(n, seed=7, iters=400000):
    rng = np.random.default_rng(seed)
    # start from a jittered spiral so points are spread out
    k = np.arange(n)
    t = k * 2.399963229728653
    rad = 0.9 * np.sqrt((k + 0.5) / n)
    p = np.stack([rad * np.cos(t), rad * np.sin(t)], axis=1)
    p += rng.normal(scale=1e-3, size=p.shape)

    r = 0.5 * np.sqrt(1.0 / n)  # safely below any feasible radius
    grow = 1.00003
    best = None
    for it in range(iters):
        d = p[:, None, :] - p[None, :, :]
        dist = np.sqrt((d * d).sum(-1))
        np.fill_diagonal(dist, np.inf)
        dmin = dist.min()
        norm = np.linalg.norm(p, axis=1)
        slack_container = (1.0 - r) - norm.max()
        feasible = dmin >= 2 * r - 1e-12 and slack_container >= -1e-12
        if feasible:
            if best is None or r > best[0]:
                best = (r, p.copy())
            r *= grow
        # resolve overlaps: push apart pairs closer than 2r
        overlap = np.maximum(0.0, 2 * r - dist)
        if overlap.max() > 0:
            with np.errstate(invalid="ignore", divide="ignore"):
                unit = d / dist[:, :, None]
            unit = np.nan_to_num(unit)
            push = (overlap[:, :, None] * unit).sum(axis=1)
            p += 0.5 * push
        # pull back into the container
        norm = np.linalg.norm(p, axis=1)
        out = norm > (1.0 - r)
        if out.any():
            p[out] *= ((1.0 - r) / norm[out])[:, None]
        if it % 50000 == 49999:
            p += rng.normal(scale=1e-5, size=p.shape)  # escape local jams
    return best


def main():
    n = int(sys.argv[1])
    out = sys.argv[2]
    seed = int(sys.argv[3]) if len(sys.argv) > 3 else 7
    r, p = pack(n, seed)
    d = p[:, None, :] - p[None, :, :]
    dist = np.sqrt((d * d).sum(-1))
    np.fill_diagonal(dist, np.inf)
    dmin = dist.min()
    with open(out, "w") as f:
        f.write(f"# {n} circle centers packed in the unit circle\n")
        f.write(f"radius {dmin / 2:.17g}\n")
        for x, y in p:
            f.write(f"{x:.17g} {y:.17g}\n")
    print(f"n={n} radius={dmin/2:.6f} container_use={np.linalg.norm(p,axis=1).max()+dmin/2:.6f}")


if __name__ == "__main__":
    main()

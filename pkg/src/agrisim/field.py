"""Field coverage grid: spray dose and mow coverage painted onto square cells.

The field is an axis-aligned rectangle of square cells. Cell (i, j) covers
[i*cell, (i+1)*cell) x [j*cell, (j+1)*cell) in meters; its center is at
((i+0.5)*cell, (j+0.5)*cell). Spray is tracked as liquid dose per cell (L),
mowing as a boolean mask. All paint operations work on bounding-box slices so
per-tick cost scales with the painted footprint, not the field size.
"""

import math
from typing import Optional

import numpy as np


class FieldGrid:
    """Square-cell coverage grid over a w x h meter rectangle."""

    def __init__(self, width_m: float, height_m: float, cell_m: float = 0.05):
        if width_m <= 0 or height_m <= 0:
            raise ValueError("field dimensions must be > 0")
        if cell_m <= 0:
            raise ValueError("cell size must be > 0")
        self.width_m = float(width_m)
        self.height_m = float(height_m)
        self.cell_m = float(cell_m)
        self.nx = max(1, int(round(width_m / cell_m)))
        self.ny = max(1, int(round(height_m / cell_m)))
        # dose in liters, indexed [j, i] (row-major, y outer)
        self.spray_l = np.zeros((self.ny, self.nx), dtype=np.float64)
        self.mowed = np.zeros((self.ny, self.nx), dtype=bool)
        # cells touched since the last drain_changes(), for delta consumers
        self._changed_spray: set[tuple[int, int]] = set()
        self._changed_mowed: set[tuple[int, int]] = set()
        # running counts so aggregate queries stay O(1)
        self._n_sprayed = 0
        self._n_mowed = 0

    @property
    def cell_area_m2(self) -> float:
        return self.cell_m * self.cell_m

    def clear(self) -> None:
        """Blank the grid and all change tracking."""
        self.spray_l[:] = 0.0
        self.mowed[:] = False
        self._changed_spray.clear()
        self._changed_mowed.clear()
        self._n_sprayed = 0
        self._n_mowed = 0

    def contains(self, x: float, y: float) -> bool:
        return 0.0 <= x < self.nx * self.cell_m and 0.0 <= y < self.ny * self.cell_m

    def _clip_index_range(self, lo: float, hi: float, n: int) -> Optional[tuple[int, int]]:
        """Cell index range [a, b) whose centers can fall in [lo, hi]."""
        a = max(0, int(math.floor(lo / self.cell_m - 0.5)))
        b = min(n, int(math.ceil(hi / self.cell_m + 0.5)))
        if a >= b:
            return None
        return a, b

    def _centers(self, a: int, b: int) -> np.ndarray:
        return (np.arange(a, b, dtype=np.float64) + 0.5) * self.cell_m

    def paint_disc(self, cx: float, cy: float, radius: float, volume_l: float) -> float:
        """Spread volume_l evenly over the cells whose centers lie in the disc.

        The even split is over the full disc on an unbounded grid, so dose per
        cell does not depend on how much of the disc hangs off the field; the
        off-field share is discarded. Returns the volume actually deposited.
        """
        if radius <= 0.0 or volume_l <= 0.0:
            return 0.0
        # count covered centers over the unbounded lattice
        c = self.cell_m
        i0 = int(math.floor((cx - radius) / c - 0.5))
        i1 = int(math.ceil((cx + radius) / c + 0.5))
        j0 = int(math.floor((cy - radius) / c - 0.5))
        j1 = int(math.ceil((cy + radius) / c + 0.5))
        xs = (np.arange(i0, i1, dtype=np.float64) + 0.5) * c
        ys = (np.arange(j0, j1, dtype=np.float64) + 0.5) * c
        d2 = (xs[None, :] - cx) ** 2 + (ys[:, None] - cy) ** 2
        inside = d2 <= radius * radius
        n_total = int(inside.sum())
        if n_total == 0:
            return 0.0
        dose = volume_l / n_total
        # deposit on the on-field slice of the same lattice window
        ia, ib = max(i0, 0), min(i1, self.nx)
        ja, jb = max(j0, 0), min(j1, self.ny)
        if ia >= ib or ja >= jb:
            return 0.0
        sub = inside[ja - j0:jb - j0, ia - i0:ib - i0]
        n_in = int(sub.sum())
        if n_in == 0:
            return 0.0
        view = self.spray_l[ja:jb, ia:ib]
        self._n_sprayed += int(np.count_nonzero(sub & (view == 0.0)))
        view[sub] += dose
        js, is_ = np.nonzero(sub)
        self._changed_spray.update(zip((is_ + ia).tolist(), (js + ja).tolist()))
        return dose * n_in

    def paint_mow_swath(self, x0: float, y0: float, x1: float, y1: float,
                        radius: float) -> int:
        """Mark cells within radius of segment (x0,y0)-(x1,y1) as mowed.

        Covers the capsule a blade disc sweeps while the robot moves between
        two poses. Returns the number of newly mowed cells.
        """
        if radius <= 0.0:
            return 0
        lo_x, hi_x = min(x0, x1) - radius, max(x0, x1) + radius
        lo_y, hi_y = min(y0, y1) - radius, max(y0, y1) + radius
        ir = self._clip_index_range(lo_x, hi_x, self.nx)
        jr = self._clip_index_range(lo_y, hi_y, self.ny)
        if ir is None or jr is None:
            return 0
        ia, ib = ir
        ja, jb = jr
        xs = self._centers(ia, ib)
        ys = self._centers(ja, jb)
        px = xs[None, :] - x0
        py = ys[:, None] - y0
        dx, dy = x1 - x0, y1 - y0
        seg2 = dx * dx + dy * dy
        if seg2 == 0.0:
            d2 = px ** 2 + py ** 2
        else:
            t = np.clip((px * dx + py * dy) / seg2, 0.0, 1.0)
            d2 = (px - t * dx) ** 2 + (py - t * dy) ** 2
        inside = d2 <= radius * radius
        view = self.mowed[ja:jb, ia:ib]
        fresh_mask = inside & ~view
        fresh = int(np.count_nonzero(fresh_mask))
        if fresh:
            view |= inside
            self._n_mowed += fresh
            js, is_ = np.nonzero(fresh_mask)
            self._changed_mowed.update(zip((is_ + ia).tolist(), (js + ja).tolist()))
        return fresh

    # aggregate queries
    def sprayed_cell_count(self, min_dose_l: float = 0.0) -> int:
        if min_dose_l == 0.0:
            return self._n_sprayed
        return int(np.count_nonzero(self.spray_l > min_dose_l))

    def sprayed_area_m2(self, min_dose_l: float = 0.0) -> float:
        return self.sprayed_cell_count(min_dose_l) * self.cell_area_m2

    def mowed_cell_count(self) -> int:
        return self._n_mowed

    def mowed_area_m2(self) -> float:
        return self.mowed_cell_count() * self.cell_area_m2

    def total_spray_l(self) -> float:
        return float(self.spray_l.sum())

    # exports
    def _write_plain_pgm(self, path: str, img: np.ndarray) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(f"P2\n{self.nx} {self.ny}\n255\n")
            for row in img:
                fh.write(" ".join(str(int(v)) for v in row))
                fh.write("\n")

    def spray_to_pgm(self, path: str) -> None:
        """Dose grid as a plain-text graymap; max dose maps to white.

        Rows run top to bottom, so the image matches a map view with y up.
        """
        peak = float(self.spray_l.max())
        scale = 255.0 / peak if peak > 0 else 0.0
        self._write_plain_pgm(path, np.flipud(self.spray_l * scale).astype(np.uint8))

    def mowed_to_pgm(self, path: str) -> None:
        self._write_plain_pgm(path, np.flipud(np.where(self.mowed, 255, 0)))

    def spray_to_csv(self, path: str) -> None:
        """Dose grid as CSV, row 0 = bottom of the field (y = 0 edge)."""
        np.savetxt(path, self.spray_l, delimiter=",", fmt="%.9g")

    def drain_changes(self) -> tuple[list[list[float]], list[list[int]]]:
        """Cells touched since the last drain, then clear the record.

        Returns ([[i, j, dose_l], ...] for sprayed, [[i, j], ...] for mowed),
        both sorted for deterministic output.
        """
        sprayed = [[i, j, float(self.spray_l[j, i])]
                   for i, j in sorted(self._changed_spray)]
        mowed = [[i, j] for i, j in sorted(self._changed_mowed)]
        self._changed_spray.clear()
        self._changed_mowed.clear()
        return sprayed, mowed

    def nonzero_cells(self) -> dict[str, list]:
        """Full coverage state: {sprayed: [[i, j, dose_l], ...], mowed: [[i, j], ...]}.

        Sorted by (i, j); suits snapshot frames that rebuild a remote view.
        """
        js, is_ = np.nonzero(self.spray_l)
        sprayed = sorted([int(i), int(j), float(self.spray_l[j, i])]
                         for j, i in zip(js, is_))
        ms, mi = np.nonzero(self.mowed)
        mowed = sorted([int(i), int(j)] for j, i in zip(ms, mi))
        return {"sprayed": sprayed, "mowed": mowed}

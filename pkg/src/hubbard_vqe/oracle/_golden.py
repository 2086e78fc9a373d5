from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import TYPE_CHECKING, Dict, Optional, Tuple, Union

import numpy as np

from ._spectrum import exact_ground_state

if TYPE_CHECKING:
    from hubbard_vqe.types import HubbardModel, OccupationSector

    from ._spectrum import SpectrumResult

logger = logging.getLogger(__name__)

GoldenKey = Tuple[str, float, float, int, int]


def vector_hash(vector: np.ndarray, decimals: int = 10) -> str:
    """Digest of a phase-fixed vector, rounded so that solver noise does not show."""
    rounded = np.round(np.asarray(vector, dtype=np.complex128), decimals) + 0.0
    return hashlib.sha256(rounded.tobytes()).hexdigest()[:16]


def golden_key(model: HubbardModel, sector: OccupationSector) -> GoldenKey:
    return (model.geometry.label, model.t, model.U, sector.n_up, sector.n_down)


class GoldenCache:
    """Append-only JSON-lines file of ground-state energies.

    Each line holds ``grid, t, U, n_up, n_down, energy, vector_hash``. Later lines for
    the same key win when the file is read.

    Parameters
    ----------
    path : str or Path
        File to read and append to; created on first write.
    """

    def __init__(self, path: Union[str, Path]) -> None:
        self._path = Path(path)
        self._records: Dict[GoldenKey, Dict[str, Union[float, str]]] = {}
        if self._path.exists():
            for line in self._path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    rec = json.loads(line)
                    key = (rec["grid"], rec["t"], rec["U"], rec["n_up"], rec["n_down"])
                    self._records[key] = rec

    @property
    def path(self) -> Path:
        return self._path

    def __len__(self) -> int:
        return len(self._records)

    def get(self, model: HubbardModel, sector: OccupationSector) -> Optional[float]:
        """Recorded energy for the key, if any."""
        rec = self._records.get(golden_key(model, sector))
        return None if rec is None else float(rec["energy"])

    def record(
        self, model: HubbardModel, sector: OccupationSector, result: SpectrumResult
    ) -> None:
        """Append the result for `model` and `sector`."""
        grid, t, U, n_up, n_down = golden_key(model, sector)
        rec: Dict[str, Union[float, str]] = {
            "grid": grid,
            "t": t,
            "U": U,
            "n_up": n_up,
            "n_down": n_down,
            "energy": result.energy,
            "vector_hash": vector_hash(result.vector),
        }
        self._path.parent.mkdir(parents=True, exist_ok=True)
        with self._path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        self._records[(grid, t, U, n_up, n_down)] = rec

    def energy(
        self, model: HubbardModel, sector: OccupationSector, cap: int = 2_000_000
    ) -> float:
        """Recorded energy, computing and recording it on a miss."""
        cached = self.get(model, sector)
        if cached is not None:
            return cached
        result = exact_ground_state(model, sector, cap)
        logger.info("recording golden energy for %s in %s", model, sector)
        self.record(model, sector, result)
        return result.energy

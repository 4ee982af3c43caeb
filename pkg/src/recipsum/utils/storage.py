import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import aiofiles

from ..models.asymptotics import FitReport

logger = logging.getLogger(__name__)


class ReportStore:
    """JSON storage for fit reports and verification summaries"""

    def __init__(self, results_dir: Union[str, Path]):
        self.results_dir = Path(results_dir)
        self.fits_dir = self.results_dir / "fits"
        self.runs_dir = self.results_dir / "runs"

    async def initialize(self) -> None:
        for directory in (self.results_dir, self.fits_dir, self.runs_dir):
            directory.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def fit_id(report: FitReport) -> str:
        suffix = f"_m{report.m}" if report.m is not None else ""
        return f"{report.constant_name.value}{suffix}_x{report.x_max}"

    async def save_fit(self, report: FitReport) -> Path:
        path = self.fits_dir / f"{self.fit_id(report)}.json"
        async with aiofiles.open(path, "w", encoding="utf-8") as f:
            await f.write(report.model_dump_json(indent=2))
        logger.debug("saved fit report %s", path)
        return path

    async def load_fit(self, fit_id: str) -> Optional[FitReport]:
        path = self.fits_dir / f"{fit_id}.json"
        if not path.exists():
            return None
        async with aiofiles.open(path, "r", encoding="utf-8") as f:
            content = await f.read()
        return FitReport.model_validate_json(content)

    async def list_fits(self) -> List[str]:
        return sorted(p.stem for p in self.fits_dir.glob("*.json"))

    async def save_run(self, command: str, summary: Dict[str, Any]) -> Path:
        """Write a run summary stamped with its creation time"""
        created = datetime.now()
        record = dict(summary, command=command, created_at=created.isoformat())
        path = self.runs_dir / f"{command}_{created.strftime('%Y%m%dT%H%M%S_%f')}.json"
        async with aiofiles.open(path, "w", encoding="utf-8") as f:
            await f.write(json.dumps(record, indent=2, default=str, ensure_ascii=False))
        logger.debug("saved run summary %s", path)
        return path

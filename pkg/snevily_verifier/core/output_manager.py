"""
Output Manager for organizing witnesses and sweep results on disk.

File output is opt-in. Witnesses and reports are JSON, per-bucket sweep
metrics are CSV written through pandas.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd

logger = logging.getLogger(__name__)

CATEGORIES = ("witnesses", "reports", "metrics")


class OutputManager:
    """Manages organized output of witnesses and sweep reports"""

    def __init__(self, base_output_dir: str = "outputs", include_timestamps: bool = False):
        self.base_dir = Path(base_output_dir)
        self.include_timestamps = include_timestamps
        self.setup_directories()

    def setup_directories(self):
        for category in CATEGORIES:
            (self.base_dir / category).mkdir(parents=True, exist_ok=True)

    def get_timestamped_filename(self, base_name: str, extension: str = "json") -> str:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        return f"{base_name}_{timestamp}.{extension}"

    def _target(self, category: str, base_name: str, extension: str) -> Path:
        if self.include_timestamps:
            filename = self.get_timestamped_filename(base_name, extension)
        else:
            filename = f"{base_name}.{extension}"
        return self.base_dir / category / filename

    def _write_json(self, filepath: Path, data: Dict[str, Any]) -> str:
        with open(filepath, 'w') as f:
            json.dump(data, f, indent=2, sort_keys=True)
            f.write("\n")
        logger.info("wrote %s", filepath)
        return str(filepath)

    def save_witness(self, witness: Dict[str, Any], run_name: str) -> str:
        """Save a witness certificate as <run_name>_witness.json"""
        return self._write_json(self._target("witnesses", f"{run_name}_witness", "json"), witness)

    def save_sweep_report(self, report_data: Dict[str, Any], run_name: str) -> str:
        return self._write_json(self._target("reports", f"{run_name}_sweep_report", "json"), report_data)

    def save_sweep_metrics(self, metrics_data: pd.DataFrame, run_name: str) -> str:
        """Save per-bucket instance and violation counts to CSV"""
        filepath = self._target("metrics", f"{run_name}_sweep_metrics", "csv")
        metrics_data.to_csv(filepath, index=False)
        logger.info("wrote %s", filepath)
        return str(filepath)

    def get_run_files(self, run_name: str) -> Dict[str, List[str]]:
        """All files saved under one run name, by category"""
        run_files: Dict[str, List[str]] = {category: [] for category in CATEGORIES}
        for category in CATEGORIES:
            dir_path = self.base_dir / category
            if dir_path.exists():
                run_files[category] = sorted(str(f) for f in dir_path.glob(f"{run_name}_*"))
        return run_files

    def list_all_runs(self) -> List[str]:
        runs = set()
        suffixes = ("_witness", "_sweep_report", "_sweep_metrics")
        for category in CATEGORIES:
            for file in (self.base_dir / category).glob("*"):
                stem = file.stem
                for suffix in suffixes:
                    position = stem.find(suffix)
                    if position > 0:
                        runs.add(stem[:position])
                        break
        return sorted(runs)

    def get_output_summary(self) -> Dict[str, Any]:
        runs = self.list_all_runs()
        return {
            "total_runs": len(runs),
            "output_directories": {
                category: len(list((self.base_dir / category).glob("*"))) for category in CATEGORIES
            },
            "recent_runs": runs[-5:],
            "base_directory": str(self.base_dir),
        }

    def __str__(self) -> str:
        return f"OutputManager(base_dir={self.base_dir}, runs={len(self.list_all_runs())})"

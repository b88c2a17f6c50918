"""
Resource Manager Module
Sizes the verification worker pool and checks grid allocations against available RAM
"""

import logging
from typing import Dict, Sequence, Tuple

import psutil

from .errors import EvolutionError


# complex128 samples
BYTES_PER_SAMPLE = 16

# Live arrays during one RK4 step: state, four stages, stage input and FFT scratch
RK4_ARRAYS = 8


class ResourceManager:
    """
    Reports system memory and CPU and sizes work accordingly.
    """

    def __init__(self, max_ram_usage_percent: int = 25, max_jobs: int = 8, logger=None):
        """
        Initialize Resource Manager.

        Args:
            max_ram_usage_percent: Share of available RAM a single grid evolution may use
            max_jobs: Upper bound for the worker pool
            logger: Optional logger instance
        """
        self.max_ram_usage_percent = max_ram_usage_percent
        self.max_jobs = max(1, int(max_jobs))
        self.logger = logger

    def get_system_memory_info(self) -> Dict[str, float]:
        """
        Get current system memory information.

        Returns:
            Dictionary with memory stats in MB (total, available, used, free) and percent used
        """
        mem = psutil.virtual_memory()
        return {
            'total_mb': mem.total / (1024**2),
            'available_mb': mem.available / (1024**2),
            'used_mb': mem.used / (1024**2),
            'percent': mem.percent,
            'free_mb': mem.free / (1024**2)
        }

    def optimal_jobs(self) -> int:
        """
        Worker count for verification suites: physical cores, capped at max_jobs.

        Returns:
            Number of workers (at least 1)
        """
        cores = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True) or 1
        jobs = max(1, min(cores, self.max_jobs))
        self._log_info(f"Using {jobs} verification worker(s) ({cores} physical cores)")
        return jobs

    def grid_memory_mb(self, shape: Sequence[int]) -> float:
        samples = 1
        for n in shape:
            samples *= int(n)
        return samples * BYTES_PER_SAMPLE * RK4_ARRAYS / (1024**2)

    def check_grid(self, shape: Sequence[int]) -> Tuple[bool, str]:
        """
        Check that an evolution on a grid of this shape fits the RAM budget.

        Args:
            shape: Points per axis

        Returns:
            Tuple of (fits, message)
        """
        needed = self.grid_memory_mb(shape)
        usable = self.get_system_memory_info()['available_mb'] * self.max_ram_usage_percent / 100.0
        if needed > usable:
            message = f"Grid {tuple(shape)} needs {needed:.1f} MB, budget is {usable:.1f} MB"
            self._log_warning(message)
            return False, message
        return True, f"Grid {tuple(shape)} needs {needed:.1f} MB of {usable:.1f} MB"

    def require_grid(self, shape: Sequence[int]) -> None:
        """Raise EvolutionError when a grid does not fit"""
        fits, message = self.check_grid(shape)
        if not fits:
            raise EvolutionError(message)

    def _log_info(self, message: str) -> None:
        """Log info message"""
        if self.logger:
            self.logger.info(message, "ResourceManager")
        else:
            logging.info(f"ResourceManager: {message}")

    def _log_warning(self, message: str) -> None:
        """Log warning message"""
        if self.logger:
            self.logger.warning(message, "ResourceManager")
        else:
            logging.warning(f"ResourceManager: {message}")


def get_optimal_jobs(max_jobs: int = 8, logger=None) -> int:
    """
    Convenience function to size the worker pool.

    Args:
        max_jobs: Upper bound
        logger: Optional logger instance

    Returns:
        Worker count
    """
    return ResourceManager(max_jobs=max_jobs, logger=logger).optimal_jobs()

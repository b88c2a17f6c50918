#!/usr/bin/env python3
"""
Tests for ResourceManager
Verifies grid memory estimates, the RAM budget and worker sizing
"""

import pytest

from src.errors import EvolutionError
from src.resource_manager import ResourceManager, get_optimal_jobs


@pytest.mark.fast
def test_system_memory_info():
    info = ResourceManager().get_system_memory_info()
    assert {'total_mb', 'available_mb', 'used_mb', 'percent', 'free_mb'} <= set(info)
    assert info['total_mb'] > 0
    assert 0 <= info['percent'] <= 100


@pytest.mark.fast
def test_grid_memory_estimate():
    manager = ResourceManager()
    assert manager.grid_memory_mb([1024]) == pytest.approx(0.125)
    assert manager.grid_memory_mb([256, 64]) == pytest.approx(2.0)


@pytest.mark.fast
def test_grid_budget():
    manager = ResourceManager(max_ram_usage_percent=25)
    fits, message = manager.check_grid([1024])
    assert fits
    assert "MB" in message
    with pytest.raises(EvolutionError):
        manager.require_grid([2 ** 20, 2 ** 20])


@pytest.mark.fast
def test_worker_sizing():
    assert 1 <= ResourceManager(max_jobs=4).optimal_jobs() <= 4
    assert ResourceManager(max_jobs=0).max_jobs == 1
    assert get_optimal_jobs(max_jobs=1) == 1

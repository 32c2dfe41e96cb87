"""Heterogeneous devices as bundles of virtual unit-capacity workers.

A device with capacity c behaves like c of the weakest workers: it receives
c consecutive coded tasks of the matrix-vector plan, and its partial results
count individually toward the recovery threshold.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .decoder import is_decodable
from .encoder import EncodingPlan, proposed_mv_plan
from .errors import ProfileError


@dataclass(frozen=True)
class DeviceProfile:
    capacities: tuple[int, ...]
    split_index: int            # first split_index devices form the k_a side

    def __post_init__(self):
        caps = self.capacities
        if not caps or any(c < 1 for c in caps):
            raise ProfileError("capacities must be positive integers")
        if list(caps) != sorted(caps, reverse=True):
            raise ProfileError("capacities must be sorted nonincreasing")
        if caps[-1] != 1:
            raise ProfileError("weakest device must have capacity 1")
        if not 0 <= self.split_index <= len(caps) - 1:
            raise ProfileError("split index out of range")


@dataclass(frozen=True)
class VirtualMap:
    n: int
    k_a: int
    s: int
    ranges: tuple[tuple[int, int], ...]   # per-device [start, stop) virtual ids

    def device_tasks(self, device: int) -> range:
        start, stop = self.ranges[device]
        return range(start, stop)


def expand_profile(profile: DeviceProfile) -> VirtualMap:
    """Capacity sums fix (n, k_a, s); each device owns a contiguous id range."""
    caps = profile.capacities
    n = sum(caps)
    k_a = sum(caps[:profile.split_index])
    s = n - k_a
    offsets = [0]
    for c in caps:
        offsets.append(offsets[-1] + c)
    ranges = tuple((offsets[d], offsets[d + 1]) for d in range(len(caps)))
    return VirtualMap(n=n, k_a=k_a, s=s, ranges=ranges)


def assign_hetero(profile: DeviceProfile, seed: int) -> tuple[EncodingPlan, VirtualMap]:
    """Matrix-vector plan on the virtual homogeneous system."""
    vmap = expand_profile(profile)
    plan = proposed_mv_plan(vmap.n, vmap.k_a, vmap.s, seed)
    return plan, vmap


def recover_from_partial(completed, plan: EncodingPlan, vmap: VirtualMap,
                         ) -> tuple[bool, tuple[int, ...] | None]:
    """Pick a decodable k_a-subset out of the finished virtual tasks.

    ``completed`` holds (device, task index within the device) pairs.  The
    first decodable subset in colex order is returned; with fewer than k_a
    finished tasks recovery is impossible by counting.
    """
    virtual = set()
    for device, t in completed:
        tasks = vmap.device_tasks(device)
        if t < 0 or t >= len(tasks):
            raise ProfileError(f"device {device} has no task {t}")
        virtual.add(tasks[t])
    if len(virtual) < vmap.k_a:
        return False, None
    ordered = sorted(virtual)
    # colex order: subsets sorted by their reversed tuples
    for sub in sorted(itertools.combinations(ordered, vmap.k_a),
                      key=lambda s: s[::-1]):
        if is_decodable(plan, sub):
            return True, sub
    return False, None

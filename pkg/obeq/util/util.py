"""
Various utility functions.
"""

import hashlib

import numpy

# Relative distance under which a point is snapped onto a grid node.
SNAP_TOLERANCE = 1e-9

DIGEST_CHUNK_SIZE = 1 << 16

def nearestIndex(grid, value, tolerance = SNAP_TOLERANCE):
    """
    Finds the index of the grid node at `value` (discretizes).
    Returns None when the nearest node is farther than `tolerance` (relative) from the value.
    `grid` must be strictly increasing.
    """

    grid = numpy.asarray(grid, dtype = float)
    if (grid.size == 0 or not numpy.isfinite(value)):
        return None

    position = int(numpy.searchsorted(grid, value))

    best = None
    for index in (position - 1, position):
        if (index < 0 or index >= grid.size):
            continue

        if (best is None or abs(grid[index] - value) < abs(grid[best] - value)):
            best = index

    scale = max(1.0, abs(float(value)))
    if (abs(grid[best] - value) > tolerance * scale):
        return None

    return best

def nearestIndices(grid, values, tolerance = SNAP_TOLERANCE):
    """
    Vectorized `nearestIndex`: returns an int array with -1 where the value is off-grid.
    """

    grid = numpy.asarray(grid, dtype = float)
    values = numpy.asarray(values, dtype = float)

    positions = numpy.clip(numpy.searchsorted(grid, values), 1, grid.size - 1)
    left = positions - 1
    right = positions

    useLeft = numpy.abs(grid[left] - values) <= numpy.abs(grid[right] - values)
    indices = numpy.where(useLeft, left, right)

    scale = numpy.maximum(1.0, numpy.abs(values))
    onGrid = numpy.abs(grid[indices] - values) <= tolerance * scale
    onGrid &= numpy.isfinite(values)

    return numpy.where(onGrid, indices, -1)

def isStrictlyIncreasing(values):
    values = numpy.asarray(values, dtype = float)
    return bool(values.ndim == 1 and numpy.all(numpy.diff(values) > 0))

def digestFile(path):
    """
    SHA-256 hex digest of a file's contents.
    """

    digest = hashlib.sha256()
    with open(path, 'rb') as file:
        for chunk in iter(lambda: file.read(DIGEST_CHUNK_SIZE), b''):
            digest.update(chunk)

    return digest.hexdigest()

def digestArrays(*arrays):
    """
    SHA-256 hex digest of the raw bytes of numeric arrays (float64, C order).
    """

    digest = hashlib.sha256()
    for array in arrays:
        array = numpy.ascontiguousarray(numpy.asarray(array, dtype = float))
        digest.update(str(array.shape).encode('utf-8'))
        digest.update(array.tobytes())

    return digest.hexdigest()

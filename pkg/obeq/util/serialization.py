"""
JSON reading and writing.
Output is deterministic: sorted keys, fixed indentation, no timestamps.
Non-finite floats are written as null and numpy values as plain JSON numbers and lists.
"""

import json
import math

import numpy

from obeq.core import masks
from obeq.core.gridfunction import GridFunction

INDENT = 2

def toJson(data):
    return json.dumps(_clean(data), sort_keys = True, indent = INDENT, allow_nan = False) + '\n'

def writeJson(path, data):
    with open(path, 'w') as file:
        file.write(toJson(data))

def readJson(path):
    """
    Read a JSON object. Malformed JSON is a ValueError.
    """

    with open(path, 'r') as file:
        data = json.load(file)

    if (not isinstance(data, dict)):
        raise ValueError("Expected a JSON object in '%s'." % (path))

    return data

def saveGridFunction(path, fn, metadata = None):
    data = fn.toDict()
    if (metadata is not None):
        data['metadata'] = metadata

    writeJson(path, data)

def loadGridFunction(path):
    return GridFunction.fromDict(readJson(path))

def saveMask(path, mask, metadata = None):
    data = mask.toDict()
    if (metadata is not None):
        data['metadata'] = metadata

    writeJson(path, data)

def loadMask(path):
    """
    Load a 1-D (`grid`) or 2-D (`x_grid`, `y_grid`) mask.
    """

    data = readJson(path)
    if ('grid' in data):
        return masks.ExceptionalMask1D.fromDict(data)

    return masks.ExceptionalMask2D.fromDict(data)

def _clean(value):
    if (isinstance(value, dict)):
        return {str(key): _clean(item) for key, item in value.items()}

    if (isinstance(value, (list, tuple))):
        return [_clean(item) for item in value]

    if (isinstance(value, numpy.ndarray)):
        return [_clean(item) for item in value.tolist()]

    if (isinstance(value, (bool, numpy.bool_))):
        return bool(value)

    if (isinstance(value, (int, numpy.integer))):
        return int(value)

    if (isinstance(value, (float, numpy.floating))):
        value = float(value)
        return value if math.isfinite(value) else None

    return value

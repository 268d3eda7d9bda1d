"""Python surface of the gradua toolkit.

The compiled module speaks JSON strings; this wrapper accepts dicts or
strings and returns parsed objects.
"""

import json as _json

import _gradua

InputError = _gradua.InputError
GraduaError = _gradua.GraduaError


def _arg(value):
    if isinstance(value, str):
        return value
    return _json.dumps(value)


def check_morphism(space, map):
    return _json.loads(_gradua.check_morphism(_arg(space), _arg(map)))


def dualize_space(space, order=0):
    return _json.loads(_gradua.dualize_space(_arg(space), order))


def check_free(algebra, order=0):
    return _json.loads(_gradua.check_free(_arg(algebra), order))


def comultiply(space, element, max_weight=6):
    return _json.loads(_gradua.comultiply(_arg(space), element, max_weight))


def characterize(data, order=0):
    return _json.loads(_gradua.characterize(_arg(data), order))


def characterize_dvb(data):
    return _json.loads(_gradua.characterize_dvb(_arg(data)))


def check_n2(data):
    return _json.loads(_gradua.check_n2(_arg(data)))


def bundle_check(atlas):
    return _json.loads(_gradua.bundle_check(_arg(atlas)))


def roundtrip(space, order=0):
    return _json.loads(_gradua.roundtrip(_arg(space), order))


def selftest(seed=20240717):
    return _json.loads(_gradua.selftest(seed))


def poly_product(space, p, q):
    return _gradua.poly_product(_arg(space), p, q)


def poly_degree(space, p):
    return _gradua.poly_degree(_arg(space), p)


def component_dimension(rank, weight):
    return _gradua.component_dimension(rank, weight)

"""Complex field operations on ``(re, im)`` pairs.

Components may be floats or broadcastable arrays.  Division by an exact
zero gives ``(nan, nan)``, the undefined point.
"""

from __future__ import annotations

import numpy as np

__all__ = ["cadd", "csub", "cmul", "cdiv", "creciprocal", "cpow", "joukowski"]


def _f(v):
    return np.asarray(v, dtype=float)


def cadd(a, b):
    return _f(a[0]) + _f(b[0]), _f(a[1]) + _f(b[1])


def csub(a, b):
    return _f(a[0]) - _f(b[0]), _f(a[1]) - _f(b[1])


def cmul(a, b):
    ar, ai, br, bi = _f(a[0]), _f(a[1]), _f(b[0]), _f(b[1])
    return ar * br - ai * bi, ar * bi + ai * br


def cdiv(a, b):
    ar, ai, br, bi = _f(a[0]), _f(a[1]), _f(b[0]), _f(b[1])
    d = br * br + bi * bi
    zero = (br == 0) & (bi == 0)
    with np.errstate(all="ignore"):
        re = (ar * br + ai * bi) / d
        im = (ai * br - ar * bi) / d
    re = np.where(zero, np.nan, re)
    im = np.where(zero, np.nan, im)
    return re, im


def creciprocal(z):
    return cdiv((1.0, 0.0), z)


def cpow(z, p):
    """``z ** p`` for real ``p``; integer powers use repeated products."""
    p = _f(p)
    if p.ndim == 0 and float(p).is_integer() and abs(p) <= 64:
        n = int(p)
        result = (np.ones_like(_f(z[0])), np.zeros_like(_f(z[1])))
        base = z if n >= 0 else creciprocal(z)
        for _ in range(abs(n)):
            result = cmul(result, base)
        return result
    with np.errstate(all="ignore"):
        w = np.power(_f(z[0]) + 1j * _f(z[1]), p)
    return w.real, w.imag


def joukowski(z):
    """J(z) = z + 1/z."""
    return cadd(z, creciprocal(z))

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import lissvar as lv

C3_MATRIX = [[1, 0, -1], [-1, 1, 0]]


@pytest.fixture(scope="session")
def circle():
    return lv.build_model([[1, 1]], [0, 1])


@pytest.fixture(scope="session")
def c3_cos():
    return lv.build_model(C3_MATRIX, [0, 0, 0])


@pytest.fixture(scope="session")
def c3_sin():
    return lv.build_model(C3_MATRIX, [1, 1, 1])


@pytest.fixture(scope="session")
def a12_sin():
    return lv.build_model([[1, 2]], [1, 1])


# golden hypersurface polynomials (exponent -> integer coefficient)

CAYLEY_CUBIC = {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1, (1, 1, 1): -2, (0, 0, 0): -1}

SINE_SEXTIC = {(4, 0, 0): 1, (2, 2, 2): 4, (2, 2, 0): -2, (2, 0, 2): -2,
               (0, 4, 0): 1, (0, 2, 2): -2, (0, 0, 4): 1}

CIRCLE_QUADRIC = {(2, 0): 1, (0, 2): 1, (0, 0): -1}

# derived by eliminating t from (sin t, sin 2t): y^2 = 4x^2(1 - x^2)
A12_SIN_QUARTIC = {(4, 0): 4, (2, 0): -4, (0, 2): 1}

GOLDEN_SURFACES = {
    "circle": CIRCLE_QUADRIC,
    "c3_cos": CAYLEY_CUBIC,
    "c3_sin": SINE_SEXTIC,
    "a12_sin": A12_SIN_QUARTIC,
}


def eval_terms(terms, point):
    total = 0.0
    for expo, coeff in terms.items():
        mono = 1.0
        for x, e in zip(point, expo):
            mono *= x ** e
        total += float(coeff) * mono
    return total


def eval_terms_gradient(terms, point, h=1e-6):
    point = np.asarray(point, dtype=float)
    grad = np.zeros(len(point))
    for k in range(len(point)):
        step = np.zeros(len(point))
        step[k] = h
        grad[k] = (eval_terms(terms, point + step)
                   - eval_terms(terms, point - step)) / (2 * h)
    return grad


# displayed branch-locus curves for the triangle-graph models


def delta_triangle_cos(w1, w2):
    return (-8 * w1**5 + 4 * w1**4 * w2**2 - 20 * w1**4 * w2 - 23 * w1**4
            + 8 * w1**3 * w2**3 - 8 * w1**3 * w2**2 - 46 * w1**3 * w2
            + 4 * w1**3 + 4 * w1**2 * w2**4 + 8 * w1**2 * w2**3
            - 69 * w1**2 * w2**2 + 6 * w1**2 * w2 + 36 * w1**2
            + 20 * w1 * w2**4 - 46 * w1 * w2**3 - 6 * w1 * w2**2
            + 36 * w1 * w2 + 8 * w2**5 - 23 * w2**4 - 4 * w2**3 + 36 * w2**2)


def delta_triangle_sin(w1, w2):
    w3 = -w1 - w2
    e2 = w1 * w2 + w1 * w3 + w2 * w3
    e3 = w1 * w2 * w3
    return (64 * e2**5 + 399 * e2**4 + 840 * e2**3 + 376 * e2**2 * e3**2
            + 766 * e2**2 + 3056 * e2 * e3**2 + 288 * e2 - 16 * e3**4
            + 5812 * e3**2 + 27)


def numeric_gradient_2d(f, w1, w2, h=1e-6):
    gx = (f(w1 + h, w2) - f(w1 - h, w2)) / (2 * h)
    gy = (f(w1, w2 + h) - f(w1, w2 - h)) / (2 * h)
    return float(np.hypot(gx, gy))

"""
Exact evaluation of the solutions of the additive Olkin-Baker equation

    a(x) + b(y) = c(x + y) + d(x / y),    x, y > 0,

and of its multiplicative form f(x) g(y) = p(x + y) q(x / y).

The measurable solutions are described by seven constants (`OBParams`):

    a(x) = lam x + kappa1 log x + alpha
    b(x) = lam x + kappa2 log x + beta
    c(x) = lam x + (kappa1 + kappa2) log x + gamma
    d(x) = kappa1 log(x / (x + 1)) - kappa2 log(1 + x) + delta

with alpha + beta = gamma + delta.
The general solutions replace lam x by an additive function and kappa log by
logarithmic type functions (`GeneralSolutionSpec`).

Sign convention: `lam` is the coefficient of x in a(x),
so integrable (gamma) densities have lam < 0 and rate = -lam.

These evaluators are the ground truth used by every other module and by the tests.
"""

import dataclasses
import fractions
import math
import sys

import numpy
import scipy.special

from obeq.core import handles
from obeq.core.gridfunction import GridFunction
from obeq.util.errors import DomainError

CONSTRAINT_TOLERANCE = 1e-12

# Largest exponent whose exponential is representable.
MAX_EXPONENT = math.log(sys.float_info.max)

PARAM_NAMES = ['lambda', 'kappa1', 'kappa2', 'alpha', 'beta', 'gamma', 'delta']

@dataclasses.dataclass(frozen = True)
class OBParams(object):
    """
    The seven constants of the measurable solution family.
    Build instances with `OBParams.create` (which derives delta from the constraint);
    the raw constructor `OBParams.raw` skips the constraint check and exists for negative tests.
    """

    lam: float
    kappa1: float
    kappa2: float
    alpha: float
    beta: float
    gamma: float
    delta: float
    checked: bool = dataclasses.field(default = True, compare = False, repr = False)

    def __post_init__(self):
        for name in ('lam', 'kappa1', 'kappa2', 'alpha', 'beta', 'gamma', 'delta'):
            value = float(getattr(self, name))
            if (not math.isfinite(value)):
                raise DomainError('Parameter %s must be finite, got %r.' % (name, value))

            object.__setattr__(self, name, value)

        if (self.checked and self.constraintGap() > CONSTRAINT_TOLERANCE):
            raise DomainError('Parameters violate alpha + beta = gamma + delta by %g.'
                    % (self.constraintGap()))

    @staticmethod
    def create(lam = 0.0, kappa1 = 0.0, kappa2 = 0.0, alpha = 0.0, beta = 0.0, gamma = 0.0):
        """
        Build parameters from six values, deriving delta = alpha + beta - gamma.
        """

        delta = float(alpha) + float(beta) - float(gamma)
        return OBParams(lam, kappa1, kappa2, alpha, beta, gamma, delta)

    @staticmethod
    def raw(lam, kappa1, kappa2, alpha, beta, gamma, delta):
        """
        Build parameters without enforcing the constraint.
        """

        return OBParams(lam, kappa1, kappa2, alpha, beta, gamma, delta, checked = False)

    @staticmethod
    def zero():
        return OBParams.create()

    def constraintGap(self):
        return abs(self.alpha + self.beta - self.gamma - self.delta)

    def asTuple(self):
        return (self.lam, self.kappa1, self.kappa2, self.alpha, self.beta, self.gamma, self.delta)

    def toDict(self):
        return dict(zip(PARAM_NAMES, self.asTuple()))

    @staticmethod
    def fromDict(data):
        """
        Load from the JSON shape {lambda, kappa1, kappa2, alpha, beta, gamma[, delta]}.
        A missing delta is derived; a given delta must satisfy the constraint.
        """

        values = {}
        for name in PARAM_NAMES[:-1]:
            values[name] = float(data.get(name, 0.0))

        params = OBParams.create(values['lambda'], values['kappa1'], values['kappa2'],
                values['alpha'], values['beta'], values['gamma'])

        if ('delta' in data):
            return OBParams(*(params.asTuple()[:-1] + (float(data['delta']), )))

        return params

@dataclasses.dataclass(frozen = True)
class ComponentValues(object):
    """
    The values of a, b, c, d at one point.
    Entries are floats, or exact Fractions when every ingredient is exact.
    """

    a: object
    b: object
    c: object
    d: object

    def asTuple(self):
        return (self.a, self.b, self.c, self.d)

@dataclasses.dataclass(frozen = True)
class MultiplicativeValues(object):
    """
    The values of the positive functions f, g, p, q at one point.
    """

    f: float
    g: float
    p: float
    q: float

    def asTuple(self):
        return (self.f, self.g, self.p, self.q)

@dataclasses.dataclass(frozen = True)
class GeneralSolutionSpec(object):
    """
    The general solution family: an additive handle A, logarithmic type handles L_a and L_b,
    and constants alpha, beta, gamma.
    Construction checks the handle kinds and samples their functional identities.
    Constants are stored as exact Fractions of their given values.
    """

    additive: handles.SolutionHandle
    logA: handles.SolutionHandle
    logB: handles.SolutionHandle
    alpha: object = 0
    beta: object = 0
    gamma: object = 0

    def __post_init__(self):
        if (self.additive.kind != handles.KIND_ADDITIVE):
            raise DomainError('The additive handle is a %s function.' % (self.additive.kind))

        for handle in (self.logA, self.logB):
            if (handle.kind != handles.KIND_LOGARITHMIC):
                raise DomainError('A logarithmic handle is a %s function.' % (handle.kind))

        for name in ('alpha', 'beta', 'gamma'):
            object.__setattr__(self, name, fractions.Fraction(getattr(self, name)))

        violation = handles.checkAdditive(self.additive)
        if (violation > handles.CHECK_TOLERANCE):
            raise DomainError('The additive handle violates A(x + y) = A(x) + A(y) by %g.'
                    % (violation))

        for handle in (self.logA, self.logB):
            violation = handles.checkLogarithmic(handle)
            if (violation > handles.CHECK_TOLERANCE):
                raise DomainError('A logarithmic handle violates L(xy) = L(x) + L(y) by %g.'
                        % (violation))

    @staticmethod
    def measurable(params):
        """
        The general-form spec of measurable parameters.
        Its d agrees with the measurable d since delta = alpha + beta - gamma.
        """

        return GeneralSolutionSpec(handles.LinearAdditive(slope = params.lam),
                handles.KappaLogarithm(kappa = params.kappa1),
                handles.KappaLogarithm(kappa = params.kappa2),
                params.alpha, params.beta, params.gamma)

    def toDict(self):
        return {
            'additive': self.additive.toDict(),
            'logA': self.logA.toDict(),
            'logB': self.logB.toDict(),
            'alpha': float(self.alpha),
            'beta': float(self.beta),
            'gamma': float(self.gamma),
        }

    @staticmethod
    def fromDict(data):
        return GeneralSolutionSpec(handles.SolutionHandle.fromDict(data['additive']),
                handles.SolutionHandle.fromDict(data['logA']),
                handles.SolutionHandle.fromDict(data['logB']),
                data.get('alpha', 0.0), data.get('beta', 0.0), data.get('gamma', 0.0))

def evalQuadruple(params, x):
    """
    The values of a, b, c, d at x > 0.
    """

    x = _checkPositive(x)

    logX = math.log(x)
    log1pX = math.log1p(x)

    a = params.lam * x + params.kappa1 * logX + params.alpha
    b = params.lam * x + params.kappa2 * logX + params.beta
    c = params.lam * x + (params.kappa1 + params.kappa2) * logX + params.gamma
    d = params.kappa1 * (logX - log1pX) - params.kappa2 * log1pX + params.delta

    values = ComponentValues(a, b, c, d)
    for value in values.asTuple():
        if (not math.isfinite(value)):
            raise DomainError('Non-finite solution value at x = %g.' % (x))

    return values

def residual(params, x, y):
    """
    a(x) + b(y) - c(x + y) - d(x / y), which vanishes for every constrained parameter set.
    """

    x = _checkPositive(x)
    y = _checkPositive(y)

    a = evalQuadruple(params, x).a
    b = evalQuadruple(params, y).b
    c = evalQuadruple(params, x + y).c
    d = evalQuadruple(params, x / y).d

    return a + b - c - d

def multiplicativeQuadruple(params, x):
    """
    The multiplicative solution (f, g, p, q) = exp(a, b, c, d) at x > 0.
    Raises an OverflowError if an exponent is not representable.
    """

    values = evalQuadruple(params, x)

    for name, value in zip('abcd', values.asTuple()):
        if (value > MAX_EXPONENT):
            raise OverflowError('exp(%s(%g)) = exp(%g) overflows.' % (name, x, value))

    return MultiplicativeValues(*[math.exp(value) for value in values.asTuple()])

def multiplicativeRatio(params, x, y):
    """
    f(x) g(y) / (p(x + y) q(x / y)), which is one for every constrained parameter set.
    """

    left = multiplicativeQuadruple(params, x)
    right = multiplicativeQuadruple(params, y)
    total = multiplicativeQuadruple(params, x + y)
    quotient = multiplicativeQuadruple(params, x / y)

    return (left.f * right.g) / (total.p * quotient.q)

def gammaToParams(shape1, shape2, rate):
    """
    The parameters of the log-densities of X ~ G(shape1, rate), Y ~ G(shape2, rate):
    a = log f_X, b = log f_Y, c(x) = log f_U(x) - log x with U = X + Y ~ G(shape1 + shape2, rate),
    and d(x) = log f_V(x / (1 + x)) with V = X / (X + Y) ~ Beta(shape1, shape2).
    Note the sign: lam = -rate.
    """

    for name, value in (('shape1', shape1), ('shape2', shape2), ('rate', rate)):
        if (not (math.isfinite(value) and value > 0)):
            raise DomainError('Gamma %s must be positive, got %r.' % (name, value))

    logRate = math.log(rate)

    alpha = shape1 * logRate - float(scipy.special.gammaln(shape1))
    beta = shape2 * logRate - float(scipy.special.gammaln(shape2))
    gamma = (shape1 + shape2) * logRate - float(scipy.special.gammaln(shape1 + shape2))

    return OBParams.create(-rate, shape1 - 1.0, shape2 - 1.0, alpha, beta, gamma)

def paramsToGamma(params):
    """
    Read (shape1, shape2, rate) back from parameters: shape = kappa + 1 and rate = -lam.
    """

    shape1 = params.kappa1 + 1.0
    shape2 = params.kappa2 + 1.0
    rate = -params.lam

    if (shape1 <= 0 or shape2 <= 0 or rate <= 0):
        raise DomainError('Parameters (lambda = %g, kappa1 = %g, kappa2 = %g) are not'
                % (params.lam, params.kappa1, params.kappa2)
                + ' those of integrable densities.')

    return shape1, shape2, rate

def evalGeneral(spec, x):
    """
    The values of a, b, c, d of the general solution at x.
    x may be a float or an exact `obeq.core.field.QuadraticSurd`;
    handles that cannot evaluate x raise a DomainError.
    """

    if (float(x) <= 0):
        raise DomainError('Expected a positive point, got %s.' % (x))

    additive = spec.additive(x)
    logA = spec.logA(x)
    logB = spec.logB(x)

    a = additive + logA + spec.alpha
    b = additive + logB + spec.beta
    c = additive + logA + logB + spec.gamma
    d = spec.logA(x / (x + 1)) - spec.logB(x + 1) + spec.alpha + spec.beta - spec.gamma

    return ComponentValues(a, b, c, d)

def residualGeneral(spec, x, y):
    """
    a(x) + b(y) - c(x + y) - d(x / y) for the general solution.
    """

    a = evalGeneral(spec, x).a
    b = evalGeneral(spec, y).b
    c = evalGeneral(spec, x + y).c
    d = evalGeneral(spec, x / y).d

    return a + b - c - d

def pexiderPart(spec, x, y):
    """
    a(x) + b(y) - c(x + y) - (alpha + beta - gamma), the additive (Pexider) part of the residual.
    """

    a = evalGeneral(spec, x).a
    b = evalGeneral(spec, y).b
    c = evalGeneral(spec, x + y).c

    return a + b - c - (spec.alpha + spec.beta - spec.gamma)

def tabulate(params, grid):
    """
    Tabulate a, b, c, d on a grid. Returns four `GridFunction`s.
    """

    grid = numpy.asarray(grid, dtype = float)
    if (grid.size == 0 or numpy.any(grid <= 0)):
        raise DomainError('Tabulation grids must be positive.')

    a, b, c, d = _components(params, grid)

    return tuple(GridFunction(grid, values) for values in (a, b, c, d))

def tabulateGeneral(spec, grid):
    """
    Tabulate the general solution on a grid.
    Points a handle declines are marked invalid.
    """

    grid = numpy.asarray(grid, dtype = float)
    tables = []

    for name in ('a', 'b', 'c', 'd'):
        def component(x, name = name):
            return float(getattr(evalGeneral(spec, x), name))

        tables.append(GridFunction.fromFunction(grid, component))

    return tuple(tables)

def residualGrid(params, xs, ys):
    """
    Vectorized residual over the product xs × ys.
    Returns (residuals, scales) where scale = 1 + |a| + |b| + |c| + |d| of the four terms.
    """

    xs = numpy.asarray(xs, dtype = float)[:, numpy.newaxis]
    ys = numpy.asarray(ys, dtype = float)[numpy.newaxis, :]

    if (numpy.any(xs <= 0) or numpy.any(ys <= 0)):
        raise DomainError('Residual arguments must be positive.')

    a = _components(params, xs)[0]
    b = _components(params, ys)[1]
    c = _components(params, xs + ys)[2]
    d = _components(params, xs / ys)[3]

    residuals = a + b - c - d
    scales = 1.0 + numpy.abs(a) + numpy.abs(b) + numpy.abs(c) + numpy.abs(d)

    return residuals, scales

def _components(params, x):
    logX = numpy.log(x)
    log1pX = numpy.log1p(x)

    a = params.lam * x + params.kappa1 * logX + params.alpha
    b = params.lam * x + params.kappa2 * logX + params.beta
    c = params.lam * x + (params.kappa1 + params.kappa2) * logX + params.gamma
    d = params.kappa1 * (logX - log1pX) - params.kappa2 * log1pX + params.delta

    return a, b, c, d

def _checkPositive(x):
    try:
        x = float(x)
    except (TypeError, ValueError):
        raise DomainError('Expected a real number, got %r.' % (x))

    if (not math.isfinite(x) or x <= 0):
        raise DomainError('Expected a positive finite number, got %r.' % (x))

    return x

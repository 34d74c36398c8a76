"""Polynomial representatives of germs, with exact rational coefficients."""

from fractions import Fraction

from .errors import DimensionMismatch, NegativeExponent


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Germ:
    """A polynomial ``sum a_k x^k`` in ``vars`` variables.

    ``context`` is an optional :class:`~singulens.semigroup.Semigroup`; when
    present the polynomial is read as a function on the toric variety X(S) and
    ``vars`` must equal the number of semigroup generators.
    """

    __slots__ = ("vars", "terms", "context")

    def __init__(self, terms, vars=None, context=None):
        clean = {}
        for k, c in dict(terms).items():
            k = tuple(int(e) for e in k)
            if any(e < 0 for e in k):
                raise NegativeExponent(f"negative exponent in {k}")
            c = Fraction(c)
            if c:
                clean[k] = clean.get(k, 0) + c
                if not clean[k]:
                    del clean[k]
        if vars is None:
            if not terms:
                raise ValueError("the number of variables is needed for an empty polynomial")
            vars = len(next(iter(dict(terms))))
        if any(len(k) != vars for k in clean):
            raise DimensionMismatch("exponent length differs from the number of variables")
        if context is not None and context.r != vars:
            raise DimensionMismatch(
                f"germ in {vars} variables on a semigroup with {context.r} generators"
            )
        self.vars = vars
        self.terms = dict(sorted(clean.items()))
        self.context = context

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, vars, context=None):
        return cls({}, vars, context)

    @classmethod
    def constant(cls, c, vars, context=None):
        return cls({(0,) * vars: c}, vars, context)

    @classmethod
    def monomial(cls, exponent, coeff=1, context=None):
        return cls({tuple(exponent): coeff}, len(exponent), context)

    @classmethod
    def variable(cls, i, vars, context=None):
        e = [0] * vars
        e[i] = 1
        return cls({tuple(e): 1}, vars, context)

    @classmethod
    def variables(cls, vars, context=None):
        return [cls.variable(i, vars, context) for i in range(vars)]

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Germ.constant(other, self.vars, self.context)
        if not isinstance(other, Germ):
            return NotImplemented
        return (
            self.vars == other.vars
            and self.terms == other.terms
            and self.context == other.context
        )

    def __hash__(self):
        return hash((self.vars, tuple(self.terms.items()), self.context))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __repr__(self):
        return f"Germ({self.format()!r})"

    def __str__(self):
        return self.format()

    def format(self, names=None):
        if names is None:
            names = default_names(self.vars)
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items(), key=lambda kc: (sum(kc[0]), tuple(-e for e in kc[0]))):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Germ):
            if other.vars != self.vars:
                raise DimensionMismatch("germs live in different numbers of variables")
            return other
        return Germ.constant(other, self.vars, self.context)

    def _with(self, terms):
        return Germ(terms, self.vars, self.context)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self._with(out)

    __radd__ = __add__

    def __neg__(self):
        return self._with({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _add_exp(k1, k2)
                out[k] = out.get(k, 0) + c1 * c2
        return self._with(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        out = Germ.constant(1, self.vars, self.context)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- structure -----------------------------------------------------------

    def exponents(self):
        return list(self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def with_context(self, context):
        return Germ(self.terms, self.vars, context)

    def derivative(self, i):
        out = {}
        for k, c in self.terms.items():
            if k[i]:
                kk = list(k)
                kk[i] -= 1
                out[tuple(kk)] = c * k[i]
        return self._with(out)

    def gradient(self):
        return [self.derivative(i) for i in range(self.vars)]

    def select(self, keep):
        """Terms whose exponent satisfies ``keep``."""
        return self._with({k: c for k, c in self.terms.items() if keep(k)})

    def homogeneous_part(self, d):
        return self.select(lambda k: sum(k) == d)

    def compose(self, substitutions):
        """``f(p_1, ..., p_r)`` for germs ``p_i`` sharing one variable count."""
        if len(substitutions) != self.vars:
            raise DimensionMismatch("one substitution per variable is required")
        target = substitutions[0]
        out = Germ.zero(target.vars, target.context)
        powers = [{0: Germ.constant(1, target.vars, target.context)} for _ in substitutions]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * substitutions[i]
            return cache[e]

        for k, c in self.terms.items():
            term = Germ.constant(c, target.vars, target.context)
            for i, e in enumerate(k):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def evaluate(self, point):
        total = 0
        for k, c in self.terms.items():
            v = c
            for x, e in zip(point, k):
                if e:
                    v = v * x**e
            total = total + v
        return total


def default_names(r):
    if r <= 3:
        return ["x", "y", "z"][:r]
    return [f"x{i + 1}" for i in range(r)]

"""
Aritmética exata sobre ℚ e extensões multiquadráticas ℚ(√d₁,…,√dₘ).

Um :class:`QuadraticField` fixa o contexto de radicandos de uma computação.
Seus geradores são primos distintos, de modo que a base canônica
{√P : P produto de um subconjunto dos primos} é ℚ-linearmente independente;
um radicando livre de quadrados qualquer (ex.: 6) é o elemento √2·√3 da base.

Todo teste de zero é exato (anulamento de coeficientes). O sinal de um
elemento não nulo é decidido por refinamento intervalar de √P com precisão
dobrada até o intervalo excluir o zero.

Também concentra a álgebra linear racional usada pelos demais módulos
(postos, núcleos, escalonamento, inversas via sympy) e os subespaços afins
com ponto-base irracional e direções racionais.

Uso standalone::

    python -m polycone.scalars --sqrt 2 --sqrt 3
"""

import argparse
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

import sympy

from polycone.config import SIGN_START_BITS
from polycone.erros import FieldMismatchError

log = logging.getLogger(__name__)

Rational = Union[int, Fraction]
RationalVector = tuple[Fraction, ...]


# ===========================================================================
# Conversões racionais
# ===========================================================================


def as_fraction(valor: object) -> Fraction:
    """Converte int, Fraction, string "p/q" ou racional sympy em Fraction.

    Raises:
        ValueError: Se o valor não for racional exato (floats são recusados).
    """
    if isinstance(valor, bool):
        raise ValueError(f"Valor booleano não é racional: {valor!r}")
    if isinstance(valor, Fraction):
        return valor
    if isinstance(valor, int):
        return Fraction(valor)
    if isinstance(valor, str):
        try:
            return Fraction(valor.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"Racional inválido: {valor!r}") from exc
    if isinstance(valor, sympy.Rational):
        return Fraction(int(valor.p), int(valor.q))
    if isinstance(valor, ExactScalar) and valor.is_rational():
        return valor.rational_part
    raise ValueError(f"Valor não racional exato: {valor!r}")


def fraction_to_str(q: Fraction) -> str:
    """Serializa um racional sempre no formato "p/q"."""
    return f"{q.numerator}/{q.denominator}"


def as_rational_vector(valores: Iterable[object]) -> RationalVector:
    """Tupla de Fractions a partir de qualquer sequência racional."""
    return tuple(as_fraction(v) for v in valores)


def primitive(v: Sequence[Rational]) -> tuple[int, ...]:
    """Múltiplo inteiro primitivo (positivo) de um vetor racional não nulo.

    Raises:
        ValueError: Se o vetor for nulo.
    """
    fr = as_rational_vector(v)
    if all(c == 0 for c in fr):
        raise ValueError("Vetor nulo não possui representante primitivo")
    den = reduce(math.lcm, (c.denominator for c in fr), 1)
    inteiros = [int(c * den) for c in fr]
    g = reduce(math.gcd, (abs(c) for c in inteiros), 0)
    return tuple(c // g for c in inteiros)


def reduce_row(v: Sequence[Rational]) -> tuple[int, ...]:
    """Linha inteira com mdc 1 (funcional reduzido); vetor nulo fica nulo."""
    fr = as_rational_vector(v)
    if all(c == 0 for c in fr):
        return tuple(0 for _ in fr)
    return primitive(fr)


# ===========================================================================
# Álgebra linear racional (sympy)
# ===========================================================================


def _to_sympy(rows: Sequence[Sequence[Rational]], n: int | None = None) -> sympy.Matrix:
    linhas = [list(r) for r in rows]
    if not linhas:
        return sympy.zeros(0, n or 0)
    return sympy.Matrix(
        [[sympy.Rational(as_fraction(c).numerator, as_fraction(c).denominator) for c in r]
         for r in linhas]
    )


def rank(rows: Sequence[Sequence[Rational]]) -> int:
    """Posto racional de uma lista de linhas."""
    if not rows:
        return 0
    return int(_to_sympy(rows).rank())


def rref_rows(
    rows: Sequence[Sequence[Rational]], n: int | None = None
) -> tuple[tuple[RationalVector, ...], tuple[int, ...]]:
    """Forma escalonada reduzida: (linhas não nulas, colunas pivô)."""
    if not rows:
        return (), ()
    m, pivots = _to_sympy(rows, n).rref()
    linhas = tuple(
        tuple(as_fraction(m[i, j]) for j in range(m.cols)) for i in range(len(pivots))
    )
    return linhas, tuple(int(p) for p in pivots)


def nullspace(rows: Sequence[Sequence[Rational]], n: int) -> list[tuple[int, ...]]:
    """Base do núcleo racional {x : Ax = 0} em vetores inteiros primitivos."""
    if not rows:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    return [primitive([as_fraction(c) for c in vec]) for vec in _to_sympy(rows).nullspace()]


def solve_rational(
    A: Sequence[Sequence[Rational]], b: Sequence[Rational], n: int
) -> RationalVector | None:
    """Uma solução particular de Ax = b (parâmetros livres nulos), ou None."""
    if not A:
        return tuple(Fraction(0) for _ in range(n))
    M = _to_sympy(A)
    rhs = _to_sympy([[c] for c in b])
    try:
        sol, params = M.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return tuple(as_fraction(sol[i, 0]) for i in range(n))


def inverse(rows: Sequence[Sequence[Rational]]) -> tuple[RationalVector, ...]:
    """Inversa exata de uma matriz racional quadrada.

    Raises:
        ValueError: Se a matriz for singular.
    """
    M = _to_sympy(rows)
    if M.det() == 0:
        raise ValueError("Matriz singular")
    inv = M.inv()
    return tuple(tuple(as_fraction(inv[i, j]) for j in range(inv.cols)) for i in range(inv.rows))


def determinant(rows: Sequence[Sequence[Rational]]) -> Fraction:
    """Determinante exato."""
    return as_fraction(_to_sympy(rows).det())


def integer_kernel_basis(rows: Sequence[Sequence[Rational]], n: int) -> list[tuple[int, ...]]:
    """ℤ-base do reticulado {z ∈ ℤⁿ : Az = 0}.

    Operações unimodulares de coluna levam A a forma escalonada por colunas;
    as colunas da matriz de transformação correspondentes às colunas nulas
    formam a base procurada.
    """
    M = [list(reduce_row(r)) for r in rows if any(as_fraction(c) != 0 for c in r)]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_op(dst: int, src: int, fator: int) -> None:
        # coluna dst -= fator * coluna src
        for linha in M:
            linha[dst] -= fator * linha[src]
        for linha in U:
            linha[dst] -= fator * linha[src]

    def col_swap(a: int, b: int) -> None:
        for linha in M:
            linha[a], linha[b] = linha[b], linha[a]
        for linha in U:
            linha[a], linha[b] = linha[b], linha[a]

    piv = 0
    for linha in M:
        if piv >= n:
            break
        while True:
            nz = [j for j in range(piv, n) if linha[j] != 0]
            if not nz:
                break
            j_min = min(nz, key=lambda j: abs(linha[j]))
            if j_min != piv:
                col_swap(j_min, piv)
            outros = [j for j in range(piv + 1, n) if linha[j] != 0]
            if not outros:
                break
            for j in outros:
                col_op(j, piv, linha[j] // linha[piv])
        if linha[piv] != 0:
            piv += 1
    return [tuple(U[i][j] for i in range(n)) for j in range(piv, n)]


# ===========================================================================
# Corpo multiquadrático
# ===========================================================================


@dataclass(frozen=True)
class QuadraticField:
    """Contexto ℚ(√p₁,…,√pₘ) com primos distintos em ordem crescente."""

    primes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError(f"Primos devem ser distintos e ordenados: {self.primes}")
        for p in self.primes:
            if not sympy.isprime(p):
                raise ValueError(f"Gerador {p} não é primo")

    @classmethod
    def for_radicands(cls, radicands: Iterable[int]) -> "QuadraticField":
        """Menor contexto contendo √d para cada radicando livre de quadrados d > 1.

        Raises:
            ValueError: Se algum d não for inteiro > 1 livre de quadrados.
        """
        primos: set[int] = set()
        for d in radicands:
            if not isinstance(d, int) or isinstance(d, bool) or d <= 1:
                raise ValueError(f"Radicando deve ser inteiro > 1: {d!r}")
            fatores = sympy.factorint(d)
            if any(e > 1 for e in fatores.values()):
                raise ValueError(f"Radicando {d} não é livre de quadrados")
            primos.update(int(p) for p in fatores)
        return cls(tuple(sorted(primos)))

    @property
    def degree(self) -> int:
        return 1 << len(self.primes)

    def radicand(self, mask: int) -> int:
        """Produto dos primos selecionados pela máscara (1 para a máscara 0)."""
        return math.prod(p for i, p in enumerate(self.primes) if mask >> i & 1)

    def mask_of(self, d: int) -> int:
        """Máscara do radicando livre de quadrados d neste contexto.

        Raises:
            FieldMismatchError: Se algum primo de d não pertencer ao contexto.
        """
        if d == 1:
            return 0
        mask = 0
        for p, e in sympy.factorint(d).items():
            if e > 1:
                raise ValueError(f"Radicando {d} não é livre de quadrados")
            if int(p) not in self.primes:
                raise FieldMismatchError(f"√{d} não pertence a ℚ{self.label()}")
            mask |= 1 << self.primes.index(int(p))
        return mask

    def label(self) -> str:
        if not self.primes:
            return ""
        return "(" + ",".join(f"√{p}" for p in self.primes) + ")"

    def zero(self) -> "ExactScalar":
        return ExactScalar(self, tuple(Fraction(0) for _ in range(self.degree)))

    def one(self) -> "ExactScalar":
        return self.embed(1)

    def embed(self, q: Rational) -> "ExactScalar":
        coefs = [Fraction(0)] * self.degree
        coefs[0] = as_fraction(q)
        return ExactScalar(self, tuple(coefs))

    def sqrt(self, d: int) -> "ExactScalar":
        """√d para d livre de quadrados cujos primos estão no contexto."""
        coefs = [Fraction(0)] * self.degree
        coefs[self.mask_of(d)] = Fraction(1)
        return ExactScalar(self, tuple(coefs))


QQ = QuadraticField()


def _campo_comum(a: QuadraticField, b: QuadraticField) -> QuadraticField:
    if a == b or not b.primes:
        return a
    if not a.primes:
        return b
    raise FieldMismatchError(f"Contextos incompatíveis: ℚ{a.label()} e ℚ{b.label()}")


# ===========================================================================
# ExactScalar
# ===========================================================================


@dataclass(frozen=True, eq=False)
class ExactScalar:
    """Elemento Σ c_M·√P_M de um corpo multiquadrático, coeficientes racionais."""

    field: QuadraticField
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.field.degree:
            raise ValueError("Número de coeficientes incompatível com o corpo")

    # ------------------------------------------------------------------ construção

    @classmethod
    def of(cls, valor: "ScalarLike", campo: QuadraticField | None = None) -> "ExactScalar":
        """Coage int/Fraction/ExactScalar para o contexto dado (ou ℚ)."""
        if isinstance(valor, ExactScalar):
            if campo is None or valor.field == campo:
                return valor
            alvo = _campo_comum(campo, valor.field)
            if alvo != campo:
                raise FieldMismatchError(
                    f"Escalar de ℚ{valor.field.label()} fora de ℚ{campo.label()}"
                )
            return campo.embed(valor.rational_part)
        return (campo or QQ).embed(as_fraction(valor))

    @classmethod
    def from_terms(
        cls,
        rational: Rational,
        radicals: Iterable[tuple[int, Rational]] = (),
        campo: QuadraticField | None = None,
    ) -> "ExactScalar":
        """Constrói a₀ + Σ cⱼ√dⱼ; o contexto padrão é o menor que contém os dⱼ."""
        termos = [(int(d), as_fraction(c)) for d, c in radicals]
        campo = campo or QuadraticField.for_radicands(d for d, _ in termos)
        coefs = [Fraction(0)] * campo.degree
        coefs[0] = as_fraction(rational)
        for d, c in termos:
            coefs[campo.mask_of(d)] += c
        return cls(campo, tuple(coefs))

    @classmethod
    def sqrt(cls, d: int, campo: QuadraticField | None = None) -> "ExactScalar":
        campo = campo or QuadraticField.for_radicands([d])
        return campo.sqrt(d)

    # ------------------------------------------------------------------ partes

    @property
    def rational_part(self) -> Fraction:
        return self.coeffs[0]

    @property
    def radical_terms(self) -> list[tuple[int, Fraction]]:
        """Pares (d, c) não nulos, ordenados por d."""
        termos = [
            (self.field.radicand(m), c) for m, c in enumerate(self.coeffs) if m and c != 0
        ]
        return sorted(termos)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def component(self, mask: int) -> Fraction:
        return self.coeffs[mask]

    def conjugate(self, i: int) -> "ExactScalar":
        """Automorfismo √pᵢ ↦ −√pᵢ."""
        return ExactScalar(
            self.field,
            tuple(-c if m >> i & 1 else c for m, c in enumerate(self.coeffs)),
        )

    # ------------------------------------------------------------------ aritmética

    def _par(self, outro: "ScalarLike") -> tuple["ExactScalar", "ExactScalar"]:
        if not isinstance(outro, ExactScalar):
            outro = self.field.embed(as_fraction(outro))
        campo = _campo_comum(self.field, outro.field)
        return ExactScalar.of(self, campo), ExactScalar.of(outro, campo)

    def __add__(self, outro: "ScalarLike") -> "ExactScalar":
        a, b = self._par(outro)
        return ExactScalar(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, outro: "ScalarLike") -> "ExactScalar":
        a, b = self._par(outro)
        return ExactScalar(a.field, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, outro: "ScalarLike") -> "ExactScalar":
        return -(self - outro)

    def __mul__(self, outro: "ScalarLike") -> "ExactScalar":
        if not isinstance(outro, ExactScalar):
            q = as_fraction(outro)
            return ExactScalar(self.field, tuple(c * q for c in self.coeffs))
        a, b = self._par(outro)
        campo = a.field
        out = [Fraction(0)] * campo.degree
        for ma, ca in enumerate(a.coeffs):
            if ca == 0:
                continue
            for mb, cb in enumerate(b.coeffs):
                if cb == 0:
                    continue
                out[ma ^ mb] += ca * cb * campo.radicand(ma & mb)
        return ExactScalar(campo, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        """Inverso exato por conjugações sucessivas.

        Raises:
            ZeroDivisionError: Se o elemento for nulo.
        """
        if self.is_zero():
            raise ZeroDivisionError("Inverso de zero")
        numerador = self.field.one()
        y = self
        for i in range(len(self.field.primes)):
            c = y.conjugate(i)
            numerador = numerador * c
            y = y * c
        # y agora é racional
        return numerador * (1 / y.rational_part)

    def __truediv__(self, outro: "ScalarLike") -> "ExactScalar":
        if not isinstance(outro, ExactScalar):
            q = as_fraction(outro)
            if q == 0:
                raise ZeroDivisionError("Divisão por zero")
            return self * (1 / q)
        return self * outro.inverse()

    def __rtruediv__(self, outro: "ScalarLike") -> "ExactScalar":
        return ExactScalar.of(outro, self.field) * self.inverse()

    def __pow__(self, e: int) -> "ExactScalar":
        if e < 0:
            return self.inverse() ** (-e)
        r = self.field.one()
        for _ in range(e):
            r = r * self
        return r

    # ------------------------------------------------------------------ ordem

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        """Intervalo racional [lo, hi] contendo o valor, com √P truncada a 2^-bits."""
        escala = 1 << bits
        lo = hi = Fraction(0)
        for m, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if m == 0:
                lo += c
                hi += c
                continue
            P = self.field.radicand(m)
            r = math.isqrt(P * escala * escala)
            raiz_lo = Fraction(r, escala)
            raiz_hi = raiz_lo if r * r == P * escala * escala else Fraction(r + 1, escala)
            if c > 0:
                lo += c * raiz_lo
                hi += c * raiz_hi
            else:
                lo += c * raiz_hi
                hi += c * raiz_lo
        return lo, hi

    def sign(self) -> int:
        """Sinal exato em {−1, 0, 1}."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return (self.rational_part > 0) - (self.rational_part < 0)
        bits = SIGN_START_BITS
        while True:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def floor(self) -> int:
        """Maior inteiro ≤ valor, exato."""
        if self.is_rational():
            return math.floor(self.rational_part)
        bits = SIGN_START_BITS
        while True:
            lo, hi = self.enclosure(bits)
            if math.floor(lo) == math.floor(hi):
                return math.floor(lo)
            bits *= 2

    def __abs__(self) -> "ExactScalar":
        return -self if self.sign() < 0 else self

    def _cmp(self, outro: "ScalarLike") -> int:
        return (self - outro).sign()

    def __lt__(self, outro: "ScalarLike") -> bool:
        return self._cmp(outro) < 0

    def __le__(self, outro: "ScalarLike") -> bool:
        return self._cmp(outro) <= 0

    def __gt__(self, outro: "ScalarLike") -> bool:
        return self._cmp(outro) > 0

    def __ge__(self, outro: "ScalarLike") -> bool:
        return self._cmp(outro) >= 0

    def __eq__(self, outro: object) -> bool:
        if isinstance(outro, (int, Fraction)) and not isinstance(outro, bool):
            return self.is_rational() and self.rational_part == outro
        if not isinstance(outro, ExactScalar):
            return NotImplemented
        try:
            return (self - outro).is_zero()
        except FieldMismatchError:
            return False

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.rational_part)
        return hash((self.field.primes, self.coeffs))

    def __float__(self) -> float:
        lo, hi = self.enclosure(64)
        return float((lo + hi) / 2)

    def __str__(self) -> str:
        partes = []
        if self.rational_part != 0 or self.is_rational():
            partes.append(str(self.rational_part))
        for d, c in self.radical_terms:
            partes.append(f"{c}·√{d}")
        return " + ".join(partes)

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    # ------------------------------------------------------------------ JSON

    def to_json(self) -> dict:
        return {
            "rat": fraction_to_str(self.rational_part),
            "rad": [{"d": d, "c": fraction_to_str(c)} for d, c in self.radical_terms],
        }


ScalarLike = Union[int, Fraction, ExactScalar]


def radicands_in_json(obj: object) -> set[int]:
    """Radicandos mencionados em um valor escalar/vetor JSON (recursivo)."""
    if isinstance(obj, dict):
        return {int(t["d"]) for t in obj.get("rad", [])}
    if isinstance(obj, list):
        return set().union(*(radicands_in_json(o) for o in obj)) if obj else set()
    return set()


def scalar_from_json(obj: object, campo: QuadraticField | None = None) -> ExactScalar:
    """Decodifica "p/q", inteiro ou {"rat":..., "rad":[{"d","c"}]}.

    Raises:
        ValueError: Se o formato for inválido.
    """
    if isinstance(obj, dict):
        if "rat" not in obj and "rad" not in obj:
            raise ValueError(f"Escalar JSON sem 'rat'/'rad': {obj!r}")
        termos = [(int(t["d"]), as_fraction(t["c"])) for t in obj.get("rad", [])]
        return ExactScalar.from_terms(as_fraction(obj.get("rat", "0")), termos, campo)
    return ExactScalar.of(as_fraction(obj), campo)


# ===========================================================================
# ExactVector
# ===========================================================================


@dataclass(frozen=True)
class ExactVector:
    """Vetor de coordenadas ExactScalar em um contexto comum."""

    coords: tuple[ExactScalar, ...]

    def __post_init__(self) -> None:
        if not self.coords:
            raise ValueError("Vetor deve ter dimensão positiva")
        campos = {c.field for c in self.coords if c.field.primes}
        if len(campos) > 1:
            raise FieldMismatchError("Coordenadas em contextos distintos")

    @classmethod
    def of(cls, valores: Iterable["ScalarLike"], campo: QuadraticField | None = None) -> "ExactVector":
        lista = list(valores)
        if campo is None:
            campos = {v.field for v in lista if isinstance(v, ExactScalar) and v.field.primes}
            if len(campos) > 1:
                raise FieldMismatchError("Coordenadas em contextos distintos")
            campo = campos.pop() if campos else QQ
        return cls(tuple(ExactScalar.of(v, campo) for v in lista))

    @property
    def field(self) -> QuadraticField:
        for c in self.coords:
            if c.field.primes:
                return c.field
        return QQ

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> ExactScalar:
        return self.coords[i]

    def _checar(self, outro: "ExactVector") -> None:
        if self.dimension != outro.dimension:
            raise ValueError(
                f"Dimensões incompatíveis: {self.dimension} e {outro.dimension}"
            )

    def __add__(self, outro: "VectorLike") -> "ExactVector":
        outro = as_vector(outro)
        self._checar(outro)
        return ExactVector(tuple(a + b for a, b in zip(self.coords, outro.coords)))

    def __sub__(self, outro: "VectorLike") -> "ExactVector":
        outro = as_vector(outro)
        self._checar(outro)
        return ExactVector(tuple(a - b for a, b in zip(self.coords, outro.coords)))

    def __neg__(self) -> "ExactVector":
        return ExactVector(tuple(-a for a in self.coords))

    def __mul__(self, escalar: ScalarLike) -> "ExactVector":
        return ExactVector(tuple(a * escalar for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, escalar: ScalarLike) -> "ExactVector":
        return ExactVector(tuple(a / escalar for a in self.coords))

    def __eq__(self, outro: object) -> bool:
        if isinstance(outro, (tuple, list)):
            outro = as_vector(outro)
        if not isinstance(outro, ExactVector) or outro.dimension != self.dimension:
            return False
        return all(a == b for a, b in zip(self.coords, outro.coords))

    def __hash__(self) -> int:
        return hash(self.coords)

    def dot(self, funcional: Sequence[Rational]) -> ExactScalar:
        """⟨ℓ, x⟩ para um funcional racional ℓ."""
        if len(funcional) != self.dimension:
            raise ValueError("Funcional e vetor com dimensões distintas")
        total = self.field.zero()
        for c, x in zip(funcional, self.coords):
            if c:
                total = total + x * as_fraction(c)
        return total

    def sup_norm(self) -> ExactScalar:
        """‖x‖∞ exata."""
        melhor = abs(self.coords[0])
        for c in self.coords[1:]:
            a = abs(c)
            if a > melhor:
                melhor = a
        return melhor

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coords)

    def to_rational(self) -> RationalVector:
        """Coordenadas racionais.

        Raises:
            ValueError: Se alguma coordenada for irracional.
        """
        if not self.is_rational():
            raise ValueError("Vetor possui coordenadas irracionais")
        return tuple(c.rational_part for c in self.coords)

    def component(self, mask: int) -> RationalVector:
        """Vetor racional dos coeficientes de √P_mask."""
        return tuple(ExactScalar.of(c, self.field).coeffs[mask] for c in self.coords)

    def to_json(self) -> list:
        return [
            fraction_to_str(c.rational_part) if c.is_rational() else c.to_json()
            for c in self.coords
        ]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


VectorLike = Union[ExactVector, Sequence[ScalarLike]]


def as_vector(v: VectorLike, campo: QuadraticField | None = None) -> ExactVector:
    if isinstance(v, ExactVector) and campo is None:
        return v
    return ExactVector.of(list(v), campo)


def vector_from_json(obj: object, campo: QuadraticField | None = None) -> ExactVector:
    """Decodifica uma lista JSON de escalares em um único contexto."""
    if not isinstance(obj, list) or not obj:
        raise ValueError("Vetor JSON deve ser uma lista não vazia")
    campo = campo or QuadraticField.for_radicands(radicands_in_json(obj))
    return ExactVector(tuple(scalar_from_json(o, campo) for o in obj))


def sup_distance(x: VectorLike, y: VectorLike) -> ExactScalar:
    """‖x − y‖∞ exata.

    Raises:
        ValueError: Se as dimensões diferirem.
    """
    return (as_vector(x) - as_vector(y)).sup_norm()


# ===========================================================================
# Subespaços afins
# ===========================================================================


@dataclass(frozen=True)
class AffineSubspace:
    """base + span_ℝ(direções racionais); ``base_point=None`` marca o vazio.

    As direções são guardadas em forma escalonada reduzida, o que torna a
    representação canônica e dá coordenadas afins pelas colunas pivô.
    """

    base_point: ExactVector | None
    directions: tuple[RationalVector, ...]
    ambient_dim: int
    pivots: tuple[int, ...] = field(default=())

    @classmethod
    def build(
        cls, base: VectorLike, directions: Iterable[Sequence[Rational]] = ()
    ) -> "AffineSubspace":
        base_v = as_vector(base)
        n = base_v.dimension
        linhas = [as_rational_vector(d) for d in directions]
        for d in linhas:
            if len(d) != n:
                raise ValueError("Direção com dimensão incompatível")
        reduzidas, pivots = rref_rows(linhas, n) if linhas else ((), ())
        return cls(base_v, reduzidas, n, pivots)

    @classmethod
    def empty(cls, n: int) -> "AffineSubspace":
        return cls(None, (), n, ())

    def is_empty(self) -> bool:
        return self.base_point is None

    @property
    def dimension(self) -> int:
        return -1 if self.is_empty() else len(self.directions)

    @property
    def direction_basis(self) -> tuple[RationalVector, ...]:
        return self.directions

    def _no_span(self, v: Sequence[Rational]) -> bool:
        if all(c == 0 for c in v):
            return True
        return rank(list(self.directions) + [list(v)]) == len(self.directions)

    def contains(self, x: VectorLike) -> bool:
        """Pertinência exata: cada componente racional de x − base está no span."""
        if self.is_empty():
            return False
        x = as_vector(x)
        if x.dimension != self.ambient_dim:
            raise ValueError("Ponto com dimensão incompatível")
        diff = x - self.base_point
        return all(self._no_span(diff.component(m)) for m in range(diff.field.degree))

    def equations(self) -> list[tuple[tuple[int, ...], ExactScalar]]:
        """Equações ⟨nᵢ, y⟩ = cᵢ (normais inteiras primitivas) que cortam o subespaço."""
        if self.is_empty():
            raise ValueError("Subespaço vazio não tem equações")
        normais = nullspace(self.directions, self.ambient_dim)
        return [(n, self.base_point.dot(n)) for n in normais]

    def is_rational(self) -> bool:
        """Existe ponto racional no subespaço (verificação construtiva)."""
        if self.is_empty():
            return False
        base = self.base_point
        return all(self._no_span(base.component(m)) for m in range(1, base.field.degree))

    def rational_point(self) -> RationalVector:
        """Um ponto racional do subespaço: a parte racional do ponto-base.

        Raises:
            ValueError: Se o subespaço não for racional.
        """
        if not self.is_rational():
            raise ValueError("Subespaço sem pontos racionais")
        return self.base_point.component(0)

    def parametrize(self, x: VectorLike) -> tuple[ExactScalar, ...]:
        """Coordenadas t com x = base + Σ tⱼ·dⱼ.

        Raises:
            ValueError: Se x não pertencer ao subespaço.
        """
        if not self.contains(x):
            raise ValueError("Ponto fora do subespaço")
        diff = as_vector(x) - self.base_point
        return tuple(diff[p] for p in self.pivots)

    def point_at(self, t: Sequence[ScalarLike]) -> ExactVector:
        if len(t) != len(self.directions):
            raise ValueError("Número de parâmetros incompatível")
        ponto = self.base_point
        for tj, d in zip(t, self.directions):
            ponto = ponto + ExactVector.of([c for c in d]) * tj
        return ponto

    def to_json(self) -> dict:
        if self.is_empty():
            return {"empty": True, "ambient_dim": self.ambient_dim}
        return {
            "base": self.base_point.to_json(),
            "directions": [[fraction_to_str(c) for c in d] for d in self.directions],
            "dimension": self.dimension,
            "rational": self.is_rational(),
        }


def solve_affine(
    A: Sequence[Sequence[Rational]], b: VectorLike, n: int | None = None
) -> AffineSubspace:
    """Conjunto solução de Ax = b com A racional e b em um corpo multiquadrático.

    Cada componente racional de b (coeficientes de √P) é resolvida à parte;
    o ponto-base recompõe as soluções particulares e as direções são o
    núcleo racional de A.

    Args:
        A: Matriz racional m×n.
        b: Lado direito com m coordenadas exatas.
        n: Dimensão ambiente (obrigatória só quando A não tem linhas).

    Returns:
        O subespaço solução, ou o marcador vazio se o sistema for inconsistente.

    Raises:
        ValueError: Incompatibilidade de dimensões.
    """
    linhas = [as_rational_vector(r) for r in A]
    if n is None:
        if not linhas:
            raise ValueError("Dimensão ambiente indeterminada sem linhas")
        n = len(linhas[0])
    if any(len(r) != n for r in linhas):
        raise ValueError(f"Todas as linhas de A devem ter {n} colunas")
    if not linhas:
        return AffineSubspace.build([0] * n, nullspace([], n))
    b = as_vector(b)
    if b.dimension != len(linhas):
        raise ValueError(f"b tem {b.dimension} entradas; A tem {len(linhas)} linhas")
    campo = b.field
    base = ExactVector.of([0] * n, campo)
    for m in range(campo.degree):
        comp = b.component(m)
        if m and all(c == 0 for c in comp):
            continue
        sol = solve_rational(linhas, comp, n)
        if sol is None:
            log.debug("[AFIM] sistema inconsistente na componente √%d", campo.radicand(m))
            return AffineSubspace.empty(n)
        raiz = campo.one() if m == 0 else campo.sqrt(campo.radicand(m))
        base = base + ExactVector.of([raiz * c for c in sol], campo)
    return AffineSubspace.build(base, nullspace(linhas, n))


# ===========================================================================
# CLI standalone
# ===========================================================================


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Mostra a base canônica e intervalos de ℚ(√d₁,…)."
    )
    parser.add_argument("--sqrt", type=int, action="append", default=[], metavar="D")
    parser.add_argument("--bits", type=int, default=SIGN_START_BITS)
    return parser


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s: %(message)s")
    args = _build_arg_parser().parse_args()
    corpo = QuadraticField.for_radicands(args.sqrt)
    for mascara in range(corpo.degree):
        raiz = corpo.sqrt(corpo.radicand(mascara)) if mascara else corpo.one()
        lo, hi = raiz.enclosure(args.bits)
        print(f"√{corpo.radicand(mascara):<6} ∈ [{float(lo):.12f}, {float(hi):.12f}]")

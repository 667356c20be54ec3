"""Kneading prefix -> parameter bracket -> kneading prefix, for a few slopes
and a few constructed sequences."""
from fractions import Fraction

from kneading.forge import ConstructionParams, build_prefix
from kneading.tent import QSqrt2, SQRT2, TentParam, find_parameter, kneading_prefix

LENGTH = 40

for name, q in [("2", QSqrt2(Fraction(2))), ("1.9", QSqrt2(Fraction(19, 10))),
                ("1.75", QSqrt2(Fraction(7, 4))), ("1.5", QSqrt2(Fraction(3, 2))),
                ("sqrt2", SQRT2)]:
    br = find_parameter(kneading_prefix(TentParam(q), LENGTH))
    print(f"q={name:6} contains={br.contains(q)} width={br.width:.3e}")

for t in [(1, 1, 1, 1), (1, 2, 3, 4), (2, 2, 2, 3), (3, 3, 5, 5)]:
    K = build_prefix(ConstructionParams.for_tuple(*t), LENGTH).prefix
    br = find_parameter(K)
    q = br.inside if br.inside is not None else (br.q_lo + br.q_hi).half()
    back = kneading_prefix(TentParam(q), LENGTH).prefix
    same = next((i for i, (x, y) in enumerate(zip(K, back)) if x != y), LENGTH)
    print(f"{t} q~{float(q):.12f} width={br.width:.3e} agrees on {same}/{LENGTH}")

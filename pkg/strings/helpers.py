HELP_ALGEBRA = """algebra:
  compose F G [H ...]     composition F o G o H, applied right first
  inverse F               inverse
  power F K               K-th power, K may be negative
  eval F X                image of the point X
  order F                 order of a G_n element, or the period of an IET
  rank F                  rank of the angle vector of a G_n element
  saf F                   SAF invariant in wedge normal form
  reversers F H           h o f^s for a reverser h (--power s)
"""

HELP_DYNAMICS = """dynamics:
  period F                least k with f^k = id, within --budget
  decompose F             periodic / minimal / unresolved components
  bp-growth F X           break point growth along the orbit of X
  normalize-rr F          PL conjugation of restricted rotations into G_n
  three-iet F             SAF zero versus periodicity for at most 3 intervals
  rr-certificate F        non-reversibility of two restricted rotations
"""

HELP_REVERSIBILITY = """reversibility:
  reverse-check F         strong reversers in G_n, or test --reverser H
  reverse-construct F     involutions reversing f over --tau
  strengthen F H          involution (G_n) or finite order reverser (IET) from h
  factor KIND [F]         two-involutions | four-involutions | six-involutions | two-periodic
"""

HELP_ACTIONS = """actions:
  relations A             check every relation of an action file
  faithful A              faithfulness of a BS(1,-1) action
  free A                  fixed point search over words up to --bound
  minimal A               minimality certificate (--blocks n for IET generators)
  examples NAME           print a builtin action file
  normalize-action A      conjugate a free BS(1,-1) action into G_n
"""

OVERVIEW = "\n".join((HELP_ALGEBRA, HELP_DYNAMICS, HELP_REVERSIBILITY, HELP_ACTIONS)) + """
Inputs are files, '-' for stdin, or a literal value such as
  'iet lengths= alpha, 1 - alpha permutation= 2 1'
Exit codes: 0 success, 1 usage or parse error, 2 the mathematics says no.
"""

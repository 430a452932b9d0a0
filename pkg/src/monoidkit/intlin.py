"""Exact integer linear algebra: Smith normal form, kernels, lattice tests.

Matrices are plain lists of rows of Python ints, so all arithmetic is
arbitrary-precision and exact.  Everything here returns new objects and never
mutates its arguments.

The workhorse is ``smith_normal_form``, which also returns the unimodular
transforms; those are what turn a relation matrix into an explicit isomorphism
onto a direct sum of cyclic groups (needed for class maps, not just for the
isomorphism type).
"""

from __future__ import annotations

from fractions import Fraction


def dims(M):
  """Return (#rows, #cols) of a rectangular list-of-rows matrix."""
  m = len(M)
  n = len(M[0]) if m else 0
  assert all(len(row) == n for row in M), "ragged matrix"
  return m, n


def identity_matrix(n):
  return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(m, n):
  return [[0] * n for _ in range(m)]


def copy_matrix(M):
  return [list(row) for row in M]


def transpose(M):
  m, n = dims(M)
  return [[M[i][j] for i in range(m)] for j in range(n)]


def matmul(A, B):
  ma, na = dims(A)
  mb, nb = dims(B)
  assert na == mb, f"incompatible shapes {ma}x{na} * {mb}x{nb}"
  Bt = transpose(B) if nb else []
  return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A, v):
  m, n = dims(A)
  assert len(v) == n
  return [sum(a * b for a, b in zip(row, v)) for row in A]


def vec_mat(v, A):
  m, n = dims(A)
  assert len(v) == m
  return [sum(v[i] * A[i][j] for i in range(m)) for j in range(n)]


def _extgcd(a, b):
  """(g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
  old_r, r = a, b
  old_s, s = 1, 0
  old_t, t = 0, 1
  while r:
    q = old_r // r
    old_r, r = r, old_r - q * r
    old_s, s = s, old_s - q * s
    old_t, t = t, old_t - q * t
  if old_r < 0:
    old_r, old_s, old_t = -old_r, -old_s, -old_t
  return old_r, old_s, old_t


def smith_normal_form(M):
  """Diagonalize an integer matrix by unimodular row/column operations.

  Returns (D, U, V) with D = U*M*V, U and V unimodular, D diagonal with
  nonnegative entries satisfying D[i][i] | D[i+1][i+1].

  The transforms matter: if the rows of M span a sublattice L of Z^n, then
  x |-> x*V carries Z^n/L isomorphically onto the standard quotient
  (+) Z/D[i][i] (+) Z^(n-r), which is how class vectors are computed.
  """
  m, n = dims(M)
  A = copy_matrix(M)
  U = identity_matrix(m)
  V = identity_matrix(n)

  def swap_rows(i, j):
    A[i], A[j] = A[j], A[i]
    U[i], U[j] = U[j], U[i]

  def swap_cols(i, j):
    for row in A:
      row[i], row[j] = row[j], row[i]
    for row in V:
      row[i], row[j] = row[j], row[i]

  def add_row(src, dst, c):
    # row[dst] += c * row[src]
    A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
    U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

  def add_col(src, dst, c):
    for row in A:
      row[dst] += c * row[src]
    for row in V:
      row[dst] += c * row[src]

  def bezout_rows(col, i, j):
    # 2x2 unimodular block on rows (i, j): A[i][col] becomes the gcd,
    # A[j][col] becomes zero.
    p, q = A[i][col], A[j][col]
    g, s, t = _extgcd(p, q)
    a, b, c, d = s, t, -(q // g), p // g
    A[i], A[j] = ([a * x + b * y for x, y in zip(A[i], A[j])],
                  [c * x + d * y for x, y in zip(A[i], A[j])])
    U[i], U[j] = ([a * x + b * y for x, y in zip(U[i], U[j])],
                  [c * x + d * y for x, y in zip(U[i], U[j])])

  def bezout_cols(row, j1, j2):
    p, q = A[row][j1], A[row][j2]
    g, s, t = _extgcd(p, q)
    a, b, c, d = s, t, -(q // g), p // g
    for X in (A, V):
      for r in X:
        x, y = r[j1], r[j2]
        r[j1], r[j2] = a * x + b * y, c * x + d * y

  def negate_row(i):
    A[i] = [-x for x in A[i]]
    U[i] = [-x for x in U[i]]

  k = 0
  while k < min(m, n):
    # Locate a pivot: nonzero entry of smallest magnitude in A[k:, k:].
    pivot = None
    for i in range(k, m):
      for j in range(k, n):
        if A[i][j] != 0 and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
          pivot = (i, j)
    if pivot is None:
      break
    swap_rows(k, pivot[0])
    swap_cols(k, pivot[1])

    while True:
      # Plain subtraction keeps row/column k intact when the pivot already
      # divides; otherwise a Bezout block strictly shrinks the pivot, which
      # bounds the number of passes.  (Repeated subtract-and-swap, by
      # contrast, lets the off-pivot entries blow up on dense matrices.)
      progressed = False
      for i in range(k + 1, m):
        if A[i][k] != 0:
          if A[i][k] % A[k][k] == 0:
            add_row(k, i, -(A[i][k] // A[k][k]))
          else:
            bezout_rows(k, k, i)
            progressed = True
      for j in range(k + 1, n):
        if A[k][j] != 0:
          if A[k][j] % A[k][k] == 0:
            add_col(k, j, -(A[k][j] // A[k][k]))
          else:
            bezout_cols(k, k, j)
            progressed = True
      if not progressed and all(A[i][k] == 0 for i in range(k + 1, m)):
        break
    if A[k][k] < 0:
      negate_row(k)
    # Enforce divisibility: pivot must divide every remaining entry.
    offender = None
    for i in range(k + 1, m):
      for j in range(k + 1, n):
        if A[i][j] % A[k][k] != 0:
          offender = i
          break
      if offender is not None:
        break
    if offender is not None:
      add_row(offender, k, 1)
      continue  # redo elimination at the same k
    k += 1

  D = A
  assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
  for i in range(min(m, n) - 1):
    if D[i + 1][i + 1]:
      assert D[i][i] != 0 and D[i + 1][i + 1] % D[i][i] == 0
  return D, U, V


def diagonal(M):
  m, n = dims(M)
  return [M[i][i] for i in range(min(m, n))]


def invariant_factors(M):
  """Positive diagonal entries of the Smith form (including any 1s)."""
  D, _, _ = smith_normal_form(M)
  return [d for d in diagonal(D) if d != 0]


def rank(M):
  return len(invariant_factors(M))


def det(M):
  """Exact determinant via fraction-free (Bareiss) elimination."""
  m, n = dims(M)
  assert m == n
  if n == 0:
    return 1
  A = copy_matrix(M)
  sign = 1
  prev = 1
  for k in range(n - 1):
    if A[k][k] == 0:
      for i in range(k + 1, n):
        if A[i][k] != 0:
          A[k], A[i] = A[i], A[k]
          sign = -sign
          break
      else:
        return 0
    for i in range(k + 1, n):
      for j in range(k + 1, n):
        A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
    prev = A[k][k]
  return sign * A[n - 1][n - 1]


def is_unimodular(M):
  m, n = dims(M)
  return m == n and det(M) in (1, -1)


def kernel_basis(M):
  """Basis of the right kernel {x : M x = 0} as a list of integer vectors.

  The returned vectors span the full (saturated) kernel lattice.
  """
  m, n = dims(M)
  if n == 0:
    return []
  if m == 0:
    return [row[:] for row in identity_matrix(n)]
  D, U, V = smith_normal_form(M)
  r = len([d for d in diagonal(D) if d != 0])
  # M x = 0 iff D y = 0 with x = V y, i.e. y supported on coordinates >= r.
  cols = transpose(V)
  return [cols[j] for j in range(r, n)]


def solve(M, b):
  """One integer solution x of M x = b, or None if none exists."""
  m, n = dims(M)
  assert len(b) == m
  if n == 0:
    return [] if all(x == 0 for x in b) else None
  D, U, V = smith_normal_form(M)
  c = mat_vec(U, b)
  y = [0] * n
  for i in range(m):
    d = D[i][i] if i < min(m, n) else 0
    if d == 0:
      if c[i] != 0:
        return None
    else:
      if c[i] % d != 0:
        return None
      y[i] = c[i] // d
  return mat_vec(V, y)


def lattice_contains(spanning_rows, v):
  """Is v in the Z-span of the given (not necessarily independent) rows?"""
  if not spanning_rows:
    return all(x == 0 for x in v)
  assert all(len(r) == len(v) for r in spanning_rows)
  return solve(transpose(spanning_rows), list(v)) is not None


def lattice_equal(rows_a, rows_b, ambient_dim=None):
  """Do two spanning sets generate the same sublattice of Z^n?"""
  if ambient_dim is None:
    if rows_a:
      ambient_dim = len(rows_a[0])
    elif rows_b:
      ambient_dim = len(rows_b[0])
    else:
      return True
  zero = [0] * ambient_dim
  a = [r for r in rows_a if list(r) != zero]
  b = [r for r in rows_b if list(r) != zero]
  return all(lattice_contains(b, r) for r in a) and all(lattice_contains(a, r) for r in b)


def cokernel_invariants(relation_rows, n):
  """Structure of Z^n modulo the row span: (free_rank, nontrivial factors)."""
  rows = [r for r in relation_rows if any(r)]
  if not rows:
    return n, []
  assert all(len(r) == n for r in rows)
  facs = invariant_factors(rows)
  free_rank = n - len(facs)
  torsion = [d for d in facs if d > 1]
  return free_rank, torsion


def solve_mod_lattice(M, b, lattice_rows):
  """One x with M x = b modulo the row span of lattice_rows, or None."""
  m, n = dims(M)
  if not lattice_rows:
    return solve(M, b)
  ext = [list(M[i]) + [-lattice_rows[k][i] for k in range(len(lattice_rows))]
         for i in range(m)]
  sol = solve(ext, b)
  return sol[:n] if sol is not None else None

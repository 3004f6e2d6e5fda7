#!/usr/bin/env python3
"""
Document feature vectors and their stacked matrix forms.  `SparseVector` is the
interchange type for BoW/TF-IDF, `DenseVector` for document embeddings.  Model
code works on matrices: lists of `SparseVector` stack into a scipy CSR matrix,
lists of `DenseVector` into a 2-D numpy array.

Module Attributes:
  N/A
"""
import dataclasses

import numpy as np
from scipy import sparse

from clinical_notes_nlp.general.exceptions import DimensionMismatchError



@dataclasses.dataclass(frozen=True)
class SparseVector:
    """
    A sparse document vector.

    Instance Attributes:
      dim (int): Dimension.
      indices ((int)): Strictly increasing, all < dim.
      values ((float)): Nonzero values, aligned with `indices`.
    """
    dim: int
    indices: tuple = ()
    values: tuple = ()



    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise ValueError('indices and values differ in length')
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError('indices must be strictly increasing')
        if self.indices and not 0 <= self.indices[0] <= self.indices[-1] \
                < self.dim:
            raise ValueError('indices out of range')
        if any(v == 0 for v in self.values):
            raise ValueError('explicit zero values are not allowed')



    @classmethod
    def from_dict(cls, dim, entries):
        """
        Args:
          dim (int): Dimension.
          entries ({int: float}): Index to value; zero values are dropped.

        Returns:
          (SparseVector): The vector.
        """
        items = sorted((i, v) for i, v in entries.items() if v != 0)
        return cls(dim, tuple(i for i, _ in items),
                tuple(float(v) for _, v in items))



    @property
    def entries(self):
        """
        Returns:
          ([(int, float)]): (index, value) pairs sorted by index.
        """
        return list(zip(self.indices, self.values))



    def to_dense(self):
        """
        Returns:
          (ndarray): Dense 1-D array of length `dim`.
        """
        dense = np.zeros(self.dim)
        dense[list(self.indices)] = self.values
        return dense



@dataclasses.dataclass(frozen=True, eq=False)
class DenseVector:
    """
    A dense document vector, all values finite.

    Instance Attributes:
      values (ndarray): 1-D float array; treated as read-only.
    """
    values: np.ndarray



    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or not np.all(np.isfinite(values)):
            raise ValueError('DenseVector must be 1-D and finite')
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)



    @property
    def dim(self):
        """
        Returns:
          (int): Dimension.
        """
        return self.values.shape[0]



    def __eq__(self, other):
        return isinstance(other, DenseVector) \
                and np.array_equal(self.values, other.values)



    def __hash__(self):
        return hash(self.values.tobytes())



def stack_sparse(vectors, dim=None):
    """
    Args:
      vectors ([SparseVector]): The rows.
      dim (int or None): Dimension; taken from the vectors if None.

    Returns:
      (csr_matrix): `len(vectors) x dim` matrix.

    Raises:
      (DimensionMismatchError): Vectors of different dimensions.
    """
    if dim is None:
        dim = vectors[0].dim if vectors else 0
    indptr = [0]
    indices = []
    data = []
    for vec in vectors:
        if vec.dim != dim:
            raise DimensionMismatchError(f'Expected dim {dim}, got {vec.dim}')
        indices.extend(vec.indices)
        data.extend(vec.values)
        indptr.append(len(indices))
    return sparse.csr_matrix((np.asarray(data, dtype=float),
            np.asarray(indices, dtype=np.int64), np.asarray(indptr)),
            shape=(len(vectors), dim))



def unstack_sparse(matrix):
    """
    Args:
      matrix (spmatrix): Any scipy sparse matrix.

    Returns:
      ([SparseVector]): One vector per row.
    """
    csr = sparse.csr_matrix(matrix)
    csr.eliminate_zeros()
    csr.sort_indices()
    rows = []
    for r in range(csr.shape[0]):
        start, end = csr.indptr[r], csr.indptr[r + 1]
        rows.append(SparseVector(csr.shape[1],
                tuple(int(i) for i in csr.indices[start:end]),
                tuple(float(v) for v in csr.data[start:end])))
    return rows



def as_matrix(X):
    """
    Coerce feature input to the matrix form model code works on.

    Args:
      X ([SparseVector]/[DenseVector]/spmatrix/array-like): The samples.

    Returns:
      (csr_matrix or ndarray): CSR for sparse input, 2-D float array otherwise.
    """
    if sparse.issparse(X):
        return sparse.csr_matrix(X, dtype=float)
    if isinstance(X, (list, tuple)) and not X:
        return np.zeros((0, 0))
    if isinstance(X, (list, tuple)) and isinstance(X[0], SparseVector):
        return stack_sparse(X)
    if isinstance(X, (list, tuple)) and isinstance(X[0], DenseVector):
        return np.vstack([v.values for v in X])
    matrix = np.asarray(X, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1)
    return matrix



def as_row(x):
    """
    Coerce a single sample to a 1-row matrix.

    Args:
      x (SparseVector/DenseVector/array-like): The sample.

    Returns:
      (csr_matrix or ndarray): A 1-row matrix.
    """
    if isinstance(x, (SparseVector, DenseVector)):
        return as_matrix([x])
    return as_matrix(x)

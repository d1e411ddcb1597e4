import numpy as np


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """
    Cosine similarity of two vectors, clamped to [-1, 1].

    Raises:
        ValueError: On a dimension mismatch or an all-zero vector.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError(f"Dimension mismatch: {u.shape} vs {v.shape}")
    norm_u = np.linalg.norm(u)
    norm_v = np.linalg.norm(v)
    if norm_u == 0.0 or norm_v == 0.0:
        raise ValueError("Cosine similarity is undefined for an all-zero vector.")
    return float(np.clip(np.dot(u, v) / (norm_u * norm_v), -1.0, 1.0))


def cosine_scores(query: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """
    Cosine similarity of ``query`` against every row of ``matrix``.

    Raises:
        ValueError: On a dimension mismatch or an all-zero vector.
    """
    query = np.asarray(query, dtype=np.float64)
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != query.shape[0]:
        raise ValueError(f"Dimension mismatch: {query.shape} vs {matrix.shape}")
    query_norm = np.linalg.norm(query)
    row_norms = np.linalg.norm(matrix, axis=1)
    if query_norm == 0.0 or np.any(row_norms == 0.0):
        raise ValueError("Cosine similarity is undefined for an all-zero vector.")
    return np.clip(matrix @ query / (row_norms * query_norm), -1.0, 1.0)

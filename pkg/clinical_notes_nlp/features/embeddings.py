#!/usr/bin/env python3
"""
Skip-gram word vectors and their aggregation into document vectors.

Each (center, context) pair contributes the log-conditional likelihood
`log P(o | c) = u_o . v_c - log sum_i exp(u_i . v_c)` over the whole vocabulary,
where `v` are the central word vectors and `u` the context word vectors.  The
full softmax is the exact objective; negative sampling is available as a faster
approximation for larger vocabularies.

Module Attributes:
  logger (Logger): Logger for this module.
"""
import dataclasses
import logging

import numpy as np
from scipy.special import expit, logsumexp, softmax

from clinical_notes_nlp import version
from clinical_notes_nlp.features.vectors import DenseVector
from clinical_notes_nlp.features.vocab import Vocabulary
from clinical_notes_nlp.general.exceptions import EmptyVocabularyError, \
        InvalidDimensionError, NoTrainingPairsError



logger = logging.getLogger(__name__)



@dataclasses.dataclass(frozen=True, eq=False)
class EmbeddingTable:
    """
    Trained skip-gram parameters.

    Instance Attributes:
      vocab (Vocabulary): Row labels of both matrices.
      v_central (ndarray): |vocab| x d central word vectors.
      u_context (ndarray): |vocab| x d context word vectors.
    """
    vocab: Vocabulary
    v_central: np.ndarray
    u_context: np.ndarray



    def __post_init__(self):
        for name in ('v_central', 'u_context'):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.ndim != 2 or arr.shape[0] != len(self.vocab):
                raise ValueError(f'{name} must have one row per vocabulary'
                        + f' token, got shape {arr.shape}')
            if not np.all(np.isfinite(arr)):
                raise ValueError(f'{name} contains non-finite values')
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.v_central.shape != self.u_context.shape:
            raise ValueError('v_central and u_context differ in shape')



    @property
    def d(self):
        """
        Returns:
          (int): Embedding dimension.
        """
        return self.v_central.shape[1]



def extract_pairs(doc, vocab, window):
    """
    Args:
      doc (TokenDoc): The document.
      vocab (Vocabulary): The vocabulary.  OOV tokens yield no pair but still
        occupy their position.
      window (int): Max distance between center and context; >= 1.

    Returns:
      ([(int, int)]): (center index, context index) pairs in document order.
    """
    if window < 1:
        raise ValueError(f'window must be >= 1, got {window}')
    positions = [vocab.index.get(t) for t in doc.tokens]
    pairs = []
    for t, center in enumerate(positions):
        if center is None:
            continue
        lo, hi = max(0, t - window), min(len(positions), t + window + 1)
        for s in range(lo, hi):
            if s != t and positions[s] is not None:
                pairs.append((center, positions[s]))
    return pairs



def pair_loss_and_grads(v_central, u_context, center, context):
    """
    Exact full-softmax negative log-likelihood of one pair and its gradients.

    Args:
      v_central (ndarray): |V| x d central vectors.
      u_context (ndarray): |V| x d context vectors.
      center (int): Center word index.
      context (int): Context word index.

    Returns:
      (float): `-log P(context | center)`.
      (ndarray): Gradient w.r.t. `v_central[center]`, shape (d,).
      (ndarray): Gradient w.r.t. `u_context`, shape (|V|, d).
    """
    v_c = v_central[center]
    scores = u_context @ v_c
    loss = logsumexp(scores) - scores[context]
    probs = softmax(scores)
    grad_v = u_context.T @ probs - u_context[context]
    grad_u = np.outer(probs, v_c)
    grad_u[context] -= v_c
    return float(loss), grad_v, grad_u



def _full_softmax_step(v_central, u_context, center, context, lr):
    """
    Apply one SGD step on the exact objective in place.

    Returns:
      (float): Pair loss before the step.
    """
    loss, grad_v, grad_u = pair_loss_and_grads(v_central, u_context, center,
            context)
    u_context -= lr * grad_u
    v_central[center] -= lr * grad_v
    return loss



def _negative_sampling_step(v_central, u_context, center, context, negatives,
        lr):
    """
    Apply one SGD step on the negative-sampling objective in place.

    Returns:
      (float): `-log s(u_o . v_c) - sum_k log s(-u_k . v_c)` before the step.
    """
    rows = np.concatenate(([context], negatives))
    targets = np.zeros(len(rows))
    targets[0] = 1.0
    v_c = v_central[center].copy()
    u_rows = u_context[rows]
    scores = u_rows @ v_c
    loss = np.logaddexp(0, -scores[0]) + np.sum(np.logaddexp(0, scores[1:]))
    coeffs = expit(scores) - targets
    v_central[center] -= lr * (coeffs @ u_rows)
    np.add.at(u_context, rows, -lr * np.outer(coeffs, v_c))
    return float(loss)



def _noise_distribution(docs, vocab):
    """
    Returns:
      (ndarray): Unigram counts raised to 0.75, normalized.
    """
    counts = np.zeros(len(vocab))
    for doc in docs:
        for token in doc.tokens:
            idx = vocab.index.get(token)
            if idx is not None:
                counts[idx] += 1
    weights = counts ** 0.75
    return weights / weights.sum()



def train_skipgram(docs, vocab, d=100, window=5, epochs=5, lr=0.025, seed=1,
        negative=0):
    """
    Train skip-gram vectors by serial SGD over all pairs in corpus order.

    The learning rate decays linearly from `lr` to `lr / 10` over the run.

    Args:
      docs ([TokenDoc]): Training documents.
      vocab (Vocabulary): Vocabulary, at least 2 tokens.
      d (int): Embedding dimension.
      window (int): Context window.
      epochs (int): Passes over the pairs; 0 returns the initialization.
      lr (float): Initial learning rate.
      seed (int): RNG seed for initialization and negative draws.
      negative (int): Negative samples per pair; 0 trains the full softmax.

    Returns:
      (EmbeddingTable): The trained table.
      ([float]): Mean per-pair loss of each epoch, measured during the pass.
        For the full softmax this is the mean negative log-likelihood.

    Raises:
      (InvalidDimensionError): `d` < 1.
      (EmptyVocabularyError): Fewer than 2 vocabulary tokens.
      (NoTrainingPairsError): The corpus yields no pair.
    """
    if d < 1:
        raise InvalidDimensionError(f'Embedding dimension must be >= 1, got {d}')
    if len(vocab) < 2:
        raise EmptyVocabularyError('Skip-gram needs at least 2 vocabulary'
                + f' tokens, got {len(vocab)}')
    pairs = np.array([p for doc in docs for p in extract_pairs(doc, vocab,
            window)], dtype=int).reshape(-1, 2)
    if len(pairs) == 0:
        raise NoTrainingPairsError(f'No training pair within window={window}'
                + f' in {len(docs)} documents')

    rng = np.random.default_rng(seed)
    v_central = rng.uniform(-0.5 / d, 0.5 / d, size=(len(vocab), d))
    u_context = np.zeros((len(vocab), d))
    noise = _noise_distribution(docs, vocab) if negative > 0 else None

    history = []
    total_steps = epochs * len(pairs)
    step = 0
    for epoch in range(epochs):
        negs = None
        if noise is not None:
            negs = rng.choice(len(vocab), size=(len(pairs), negative), p=noise)
        losses = np.empty(len(pairs))
        for i_pair, (center, context) in enumerate(pairs):
            step_lr = lr * (1.0 - 0.9 * step / total_steps)
            if negs is None:
                losses[i_pair] = _full_softmax_step(v_central, u_context,
                        center, context, step_lr)
            else:
                losses[i_pair] = _negative_sampling_step(v_central, u_context,
                        center, context, negs[i_pair], step_lr)
            step += 1
        history.append(float(losses.mean()))
        logger.debug('Skip-gram epoch %(e)s/%(n)s: mean loss %(l).6f',
                {'e': epoch + 1, 'n': epochs, 'l': history[-1]})

    logger.info('Trained skip-gram: %(v)s tokens, d=%(d)s, %(p)s pairs,'
            ' %(e)s epochs', {'v': len(vocab), 'd': d, 'p': len(pairs),
            'e': epochs})
    return EmbeddingTable(vocab, v_central, u_context), history



def doc_embed(doc, table):
    """
    Args:
      doc (TokenDoc): The document.
      table (EmbeddingTable): The trained table.

    Returns:
      (DenseVector): Mean central vector of the in-vocabulary tokens, counted
        with multiplicity; the zero vector when there is none.
    """
    rows = [table.vocab.index[t] for t in doc.tokens if t in table.vocab]
    if not rows:
        return DenseVector(np.zeros(table.d))
    return DenseVector(table.v_central[rows].mean(axis=0))



def _token_index(table, token):
    try:
        return table.vocab.index[token]
    except KeyError as ex:
        raise KeyError(f'Token "{token}" is not in the embedding vocabulary') \
                from ex



def conditional_distribution(table, token):
    """
    Args:
      table (EmbeddingTable): The trained table.
      token (str): The center word.

    Returns:
      (ndarray): P(o | token) for every vocabulary index o; sums to 1.

    Raises:
      (KeyError): `token` is out of vocabulary.
    """
    v_c = table.v_central[_token_index(table, token)]
    return softmax(table.u_context @ v_c)



def nearest_neighbors(table, token, n=10):
    """
    Args:
      table (EmbeddingTable): The trained table.
      token (str): The query word.
      n (int): How many neighbors to return.

    Returns:
      ([(str, float)]): Other tokens by descending cosine similarity of central
        vectors, ties toward the lower index.  Zero vectors have similarity 0.

    Raises:
      (KeyError): `token` is out of vocabulary.
    """
    query = _token_index(table, token)
    norms = np.linalg.norm(table.v_central, axis=1)
    dots = table.v_central @ table.v_central[query]
    denom = norms * norms[query]
    cosines = np.divide(dots, denom, out=np.zeros_like(dots), where=denom > 0)
    order = [i for i in np.lexsort((np.arange(len(cosines)), -cosines))
            if i != query]
    return [(table.vocab.tokens[i], float(cosines[i])) for i in order[:n]]



def table_to_dict(table):
    """
    Serialize as the versioned artifact
    `{version, d, tokens, doc_freq, n_docs, v_central, u_context}`.

    Args:
      table (EmbeddingTable): The table.

    Returns:
      ({str: *}): The artifact.
    """
    return version.stamp_artifact({
        'd': table.d,
        'tokens': list(table.vocab.tokens),
        'doc_freq': list(table.vocab.doc_freq),
        'n_docs': table.vocab.n_docs,
        'v_central': table.v_central.tolist(),
        'u_context': table.u_context.tolist(),
    })



def table_from_dict(payload):
    """
    Args:
      payload ({str: *}): Output of `table_to_dict()`.

    Returns:
      (EmbeddingTable): The table.

    Raises:
      (VersionMismatchError): Incompatible artifact.
    """
    version.check_artifact_version(payload, 'EmbeddingTable')
    tokens = tuple(payload['tokens'])
    doc_freq = tuple(payload.get('doc_freq') or [1] * len(tokens))
    vocab = Vocabulary(tokens, doc_freq, payload.get('n_docs', 1))
    v_central = np.array(payload['v_central'], dtype=float) \
            .reshape(len(tokens), payload['d'])
    u_context = np.array(payload['u_context'], dtype=float) \
            .reshape(len(tokens), payload['d'])
    return EmbeddingTable(vocab, v_central, u_context)

"""Pick the description sentences worth paraphrasing."""

from __future__ import annotations

import math

from .backends import Encoder, Embedding, cosine
from .core import Origin, SourceSentence, split_sentences

__all__ = ["SHORT_DESCRIPTION_LIMIT", "select_sentences"]

# Descriptions of at most this many sentences skip scoring entirely.
SHORT_DESCRIPTION_LIMIT = 3


def select_sentences(
    description: str,
    encoder: Encoder,
    m: int = 3,
    article_id: str = "",
) -> list[SourceSentence]:
    """Return the description sentences to paraphrase, in document order.

    Short descriptions (at most ``SHORT_DESCRIPTION_LIMIT`` sentences) are
    returned whole. Longer ones are scored by cosine similarity between each
    sentence embedding and the centroid (element-wise mean) of all sentence
    embeddings; the top ``m`` sentences win, ties going to the earlier
    sentence. Each result keeps its original sentence index.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    sentences = split_sentences(description)
    if not sentences:
        return []
    sources = [
        SourceSentence(article_id=article_id, text=text, origin=Origin.DESCRIPTION, index=i)
        for i, text in enumerate(sentences)
    ]
    if len(sources) <= SHORT_DESCRIPTION_LIMIT:
        return sources
    embeddings = encoder.embed([s.text for s in sources])
    centroid = Embedding(
        tuple(
            math.fsum(emb.values[j] for emb in embeddings) / len(embeddings)
            for j in range(embeddings[0].dimension)
        )
    )
    scores = [cosine(emb, centroid) for emb in embeddings]
    winners = sorted(sorted(range(len(sources)), key=lambda i: (-scores[i], i))[:m])
    return [sources[i] for i in winners]

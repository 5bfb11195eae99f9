"""Seeded random generators used by the test harness and the demo scripts."""

from __future__ import annotations

import random
from typing import Sequence

from .graphs import MixedGraph, arc, arrow, line
from .models import IndependenceModel, _iter_triple_masks
from .preorders import Preorder, direct_skeleton


def random_skeleton(rng: random.Random, labels: Sequence[str], edge_prob: float = 0.5) -> MixedGraph:
    edges = []
    for x, u in enumerate(labels):
        for v in labels[x + 1 :]:
            if rng.random() < edge_prob:
                edges.append(line(u, v))
    return MixedGraph(frozenset(labels), tuple(edges))


def random_connected_ug(rng: random.Random, labels: Sequence[str], extra_prob: float = 0.3) -> MixedGraph:
    """Random spanning tree plus extra lines; connected by construction."""
    order = list(labels)
    rng.shuffle(order)
    edges = [line(order[i], rng.choice(order[:i])) for i in range(1, len(order))]
    for x, u in enumerate(labels):
        for v in labels[x + 1 :]:
            if rng.random() < extra_prob:
                edges.append(line(u, v))
    g = MixedGraph(frozenset(labels), tuple(edges))
    return MixedGraph(g.nodes, tuple(sorted(set(g.edges))))


def random_preorder(rng: random.Random, labels: Sequence[str], order_prob: float = 0.5) -> Preorder:
    """Random partition into classes plus a random partial order over them."""
    shuffled = list(labels)
    rng.shuffle(shuffled)
    classes: list[list[str]] = []
    for lab in shuffled:
        if classes and rng.random() < 0.4:
            rng.choice(classes).append(lab)
        else:
            classes.append([lab])
    k = len(classes)
    below = [[False] * k for _ in range(k)]
    for x in range(k):
        for y in range(x + 1, k):
            if rng.random() < order_prob:
                below[x][y] = True
    # transitive closure keeps it a partial order (edges only go upward)
    for m in range(k):
        for x in range(k):
            if below[x][m]:
                for y in range(k):
                    if below[m][y]:
                        below[x][y] = True
    pairs = []
    for cls_ in classes:
        for a in cls_:
            for b in cls_:
                pairs.append((a, b))
    for x in range(k):
        for y in range(k):
            if below[x][y]:
                for a in classes[x]:
                    for b in classes[y]:
                        pairs.append((a, b))
    return Preorder.from_pairs(labels, pairs)


def random_anterial_graph(
    rng: random.Random, labels: Sequence[str], edge_prob: float = 0.5
) -> MixedGraph:
    """Direct a random skeleton by a random preorder; anterial by construction."""
    sk = random_skeleton(rng, labels, edge_prob)
    return direct_skeleton(sk, random_preorder(rng, labels))


def random_dag(rng: random.Random, labels: Sequence[str], edge_prob: float = 0.5) -> MixedGraph:
    order = list(labels)
    rng.shuffle(order)
    edges = []
    for x in range(len(order)):
        for y in range(x + 1, len(order)):
            if rng.random() < edge_prob:
                edges.append(arrow(order[x], order[y]))
    return MixedGraph(frozenset(labels), tuple(edges))


def random_mixed_graph(
    rng: random.Random,
    labels: Sequence[str],
    edge_prob: float = 0.5,
    multi_prob: float = 0.15,
) -> MixedGraph:
    """Arbitrary mixed graph for engine stress tests: random kind per pair,
    sometimes with a parallel arc (the multi-edge shapes a CMG may carry)."""
    edges = []
    for x, u in enumerate(labels):
        for v in labels[x + 1 :]:
            if rng.random() >= edge_prob:
                continue
            kind = rng.choice(("line", "arrow", "worra", "arc"))
            if kind == "line":
                edges.append(line(u, v))
            elif kind == "arrow":
                edges.append(arrow(u, v))
            elif kind == "worra":
                edges.append(arrow(v, u))
            else:
                edges.append(arc(u, v))
            if kind != "arc" and rng.random() < multi_prob:
                edges.append(arc(u, v))
    return MixedGraph(frozenset(labels), tuple(edges))


def flip_one_elementary(rng: random.Random, model: IndependenceModel) -> IndependenceModel:
    """Toggle one uniformly chosen elementary statement of the model."""
    n = model.n
    codes = []
    for am, bm, cm in _iter_triple_masks(n):
        if am.bit_count() == 1 and bm.bit_count() == 1:
            codes.append(model._code(am, bm, cm))
    code = rng.choice(codes)
    return IndependenceModel(model.ground, model.members ^ (1 << code))

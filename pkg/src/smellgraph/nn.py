"""From-scratch graph neural networks over the heterogeneous code graphs.

Three layer types (GCN, GraphSAGE, GAT) with hand-derived reverse-mode
gradients, softmax cross-entropy, Adam, full-batch training for graph- and
node-classification, and JSON checkpoints.  Dense reference forms of each
aggregation are exposed as standalone functions; training runs on a sparse
block-diagonal lowering of many graphs at once, which computes exactly the
same math because disconnected components never exchange messages.
"""

import base64
import json
import math

import numpy as np
import scipy.sparse as sp

from . import graphs as gb
from .errors import (
    AllIgnoredError,
    EmptyDatasetError,
    EmptyMaskError,
    NonFiniteError,
    SchemaMismatchError,
    ShapeMismatchError,
)

ARCHITECTURES = ("gcn", "sage", "gat")
TRAIN_TASKS = ("graph_classification", "node_classification")
LEAKY_SLOPE = 0.2
MERGED_KIND = "__all__"

# Per smell task: the graph level it runs on, the node kind whose rows are
# pooled for graph classification and labeled for node classification, and
# the edge kinds a relational model keeps separate.
GRAPH_LEVEL = {"long_method": "method", "large_class": "class", "feature_envy": "class"}
TARGET_KIND = {"long_method": "statement", "large_class": "method", "feature_envy": "method"}
EDGE_KINDS = {
    "long_method": gb.METHOD_EDGE_KINDS,
    "large_class": gb.CLASS_EDGE_KINDS,
    "feature_envy": gb.CLASS_EDGE_KINDS,
}


# ---------------------------------------------------------------------------
# Shape and value guards


def _as_matrix(name, x):
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 2:
        raise ShapeMismatchError(f"{name} must be 2-D, got shape {arr.shape}")
    return arr


def _finite(name, arr):
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains NaN or Inf")
    return arr


def _square(name, A, n):
    A = _as_matrix(name, A)
    if A.shape != (n, n):
        raise ShapeMismatchError(f"{name} must be {n}x{n}, got {A.shape}")
    return A


def relu(x):
    return np.maximum(x, 0.0)


def leaky_relu(x, slope=LEAKY_SLOPE):
    return np.where(x >= 0, x, slope * x)


def softmax_rows(logits):
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


# ---------------------------------------------------------------------------
# Dense reference aggregations (single edge relation)


def normalized_adjacency(adjacency):
    """Symmetrically normalized adjacency with self-loops added."""
    A = _as_matrix("adjacency", adjacency)
    if A.shape[0] != A.shape[1]:
        raise ShapeMismatchError(f"adjacency must be square, got {A.shape}")
    a_hat = A + np.eye(A.shape[0])
    inv_sqrt = 1.0 / np.sqrt(a_hat.sum(axis=1))
    return a_hat * inv_sqrt[:, None] * inv_sqrt[None, :]


def gcn_forward(features, adjacency, W):
    """ReLU(D^-1/2 (A+I) D^-1/2 X W); edge weights scale the messages."""
    X = _as_matrix("features", features)
    W = _as_matrix("W", W)
    A = _square("adjacency", adjacency, X.shape[0])
    if X.shape[1] != W.shape[0]:
        raise ShapeMismatchError(f"features {X.shape} do not chain into W {W.shape}")
    return _finite("gcn_forward output", relu(normalized_adjacency(A) @ X @ W))


def neighbor_mean(features, adjacency):
    """Weight-normalized average of neighbor rows; zero for isolated nodes."""
    X = _as_matrix("features", features)
    A = _square("adjacency", adjacency, X.shape[0])
    totals = A.sum(axis=1)
    out = np.zeros_like(X)
    rows = totals != 0
    out[rows] = (A @ X)[rows] / totals[rows, None]
    return out


def sage_forward(features, adjacency, W_self, W_neigh):
    """ReLU(X W_self + mean_neighbors(X) W_neigh)."""
    X = _as_matrix("features", features)
    W_self = _as_matrix("W_self", W_self)
    W_neigh = _as_matrix("W_neigh", W_neigh)
    if W_self.shape != W_neigh.shape or X.shape[1] != W_self.shape[0]:
        raise ShapeMismatchError(
            f"features {X.shape} do not chain into W_self {W_self.shape} / W_neigh {W_neigh.shape}"
        )
    return _finite(
        "sage_forward output",
        relu(X @ W_self + neighbor_mean(X, adjacency) @ W_neigh),
    )


def gat_forward(features, adjacency, W, attention, heads, combine="concat"):
    """Attention aggregation over closed neighborhoods, pre-activation.

    Per head h with vector a_h = [a_left | a_right]: the logit for message
    v -> u is LeakyReLU(a_left . Wx_u + a_right . Wx_v), normalized by softmax
    over v in N(u) and u itself.  Heads are concatenated or averaged.  Edge
    weights are ignored; only the structure of `adjacency` is used.
    """
    X = _as_matrix("features", features)
    W = _as_matrix("W", W)
    A = _square("adjacency", adjacency, X.shape[0])
    att = _as_matrix("attention", attention)
    if X.shape[1] != W.shape[0]:
        raise ShapeMismatchError(f"features {X.shape} do not chain into W {W.shape}")
    if att.shape != (heads, 2 * W.shape[1]):
        raise ShapeMismatchError(
            f"attention must be ({heads}, {2 * W.shape[1]}), got {att.shape}"
        )
    if combine not in ("concat", "mean"):
        raise ShapeMismatchError(f"unknown head combination {combine!r}")
    U = X @ W
    mask = (A != 0) | np.eye(X.shape[0], dtype=bool)
    outs = []
    for a in att:
        left = U @ a[: W.shape[1]]
        right = U @ a[W.shape[1] :]
        logits = leaky_relu(left[:, None] + right[None, :])
        logits = np.where(mask, logits, -np.inf)
        z = np.exp(logits - logits.max(axis=1, keepdims=True))
        alpha = z / z.sum(axis=1, keepdims=True)
        outs.append(alpha @ U)
    merged = np.concatenate(outs, axis=1) if combine == "concat" else np.mean(outs, axis=0)
    return _finite("gat_forward output", merged)


def readout_mean(node_hidden, mask):
    """Arithmetic mean of the rows selected by a boolean mask."""
    H = _as_matrix("node_hidden", node_hidden)
    chosen = np.asarray(mask, dtype=bool)
    if chosen.shape != (H.shape[0],):
        raise ShapeMismatchError(f"mask must have {H.shape[0]} entries, got {chosen.shape}")
    if not chosen.any():
        raise EmptyMaskError("readout mask selected no nodes")
    return H[chosen].mean(axis=0)


# ---------------------------------------------------------------------------
# Loss and optimizer


def loss_ce(logits, labels, ignore_label=-1):
    """Mean softmax cross-entropy and its gradient, skipping ignored rows."""
    Z = _as_matrix("logits", logits)
    y = np.asarray(labels, dtype=int)
    if y.shape != (Z.shape[0],):
        raise ShapeMismatchError(f"labels must have {Z.shape[0]} entries, got {y.shape}")
    keep = y != ignore_label
    if not keep.any():
        raise AllIgnoredError("every row carries the ignore label")
    _finite("logits", Z)
    shifted = Z - Z.max(axis=1, keepdims=True)
    log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    kept = int(keep.sum())
    loss = -log_probs[keep, y[keep]].sum() / kept
    grad = np.zeros_like(Z)
    grad[keep] = np.exp(log_probs[keep])
    grad[keep, y[keep]] -= 1.0
    grad[keep] /= kept
    return float(loss), grad


def adam_state():
    return {"t": 0, "m": {}, "v": {}}


def adam_step(params, grads, state, lr=1e-3, beta1=0.9, beta2=0.999, eps=1e-8):
    """One bias-corrected Adam update; returns (new params, new state)."""
    if set(params) != set(grads):
        raise ShapeMismatchError("params and grads carry different keys")
    t = state["t"] + 1
    new_params, m_out, v_out = {}, {}, {}
    for name in params:
        p, g = params[name], np.asarray(grads[name], dtype=float)
        if p.shape != g.shape:
            raise ShapeMismatchError(f"{name}: param {p.shape} vs grad {g.shape}")
        m = beta1 * state["m"].get(name, 0.0) + (1 - beta1) * g
        v = beta2 * state["v"].get(name, 0.0) + (1 - beta2) * g * g
        m_hat = m / (1 - beta1**t)
        v_hat = v / (1 - beta2**t)
        new_params[name] = _finite(name, p - lr * m_hat / (np.sqrt(v_hat) + eps))
        m_out[name], v_out[name] = m, v
    return new_params, {"t": t, "m": m_out, "v": v_out}


# ---------------------------------------------------------------------------
# Batch lowering: many graphs as one block-diagonal sparse system


class GraphBatch:
    """Graphs packed into one node axis, with per-edge-kind operators.

    Edges are symmetrized (messages flow both ways) and deduplicated keeping
    the largest weight.  Every operator is cached per edge kind: the GCN
    normalized adjacency, the GraphSAGE row-normalized mean operator, and the
    receiver/sender-sorted edge segments used by attention.
    """

    def __init__(self, graph_list, schema):
        if not graph_list:
            raise EmptyDatasetError("no graphs to batch")
        level = GRAPH_LEVEL[schema.task]
        target = TARGET_KIND[schema.task]
        self.schema = schema
        feats, kinds, labels, graph_labels = [], [], [], []
        graph_of, node_ids, pair_maps = [], [], {}
        offset = 0
        for gi, g in enumerate(graph_list):
            if g.level != level:
                raise SchemaMismatchError(
                    f"graph {gi} is {g.level}-level, task {schema.task} wants {level}"
                )
            t = gb.to_tensors(g, schema)
            n = len(t.node_ids)
            if target not in t.node_kinds:
                raise EmptyMaskError(f"graph {gi} has no {target!r} nodes")
            feats.append(gb.packed_features(t, schema))
            kinds.extend(t.node_kinds)
            labels.append(t.labels)
            graph_labels.append(-1 if t.graph_label is None else int(t.graph_label))
            graph_of.append(np.full(n, gi, dtype=int))
            node_ids.extend(t.node_ids)
            for kind, (src, dst, w) in t.edges.items():
                store = pair_maps.setdefault(kind, {})
                for s, d, weight in zip(src + offset, dst + offset, w):
                    for a, b in ((int(s), int(d)), (int(d), int(s))):
                        store[(a, b)] = max(store.get((a, b), 0.0), float(weight))
            offset += n
        self.n_nodes = offset
        self.n_graphs = len(graph_list)
        self.X = _finite("batch features", np.vstack(feats))
        self.node_kinds = kinds
        self.node_ids = node_ids
        self.labels = np.concatenate(labels)
        self.graph_labels = np.asarray(graph_labels, dtype=int)
        self.graph_of = np.concatenate(graph_of)
        self.pairs = {k: self._pair_arrays(v) for k, v in sorted(pair_maps.items())}
        self.target_rows = np.array(
            [i for i, k in enumerate(kinds) if k == target], dtype=int
        )
        counts = np.bincount(self.graph_of[self.target_rows], minlength=self.n_graphs)
        self.target_counts = counts
        self.target_starts = np.searchsorted(
            self.graph_of[self.target_rows], np.arange(self.n_graphs)
        )
        self._gcn, self._sage, self._gat = {}, {}, {}

    @staticmethod
    def _pair_arrays(pair_map):
        items = sorted(pair_map.items())
        src = np.array([s for (s, _), _ in items], dtype=int)
        dst = np.array([d for (_, d), _ in items], dtype=int)
        w = np.array([weight for _, weight in items], dtype=float)
        return src, dst, w

    def _kind_pairs(self, kind):
        if kind == MERGED_KIND:
            merged = {}
            for src, dst, w in self.pairs.values():
                for s, d, weight in zip(src, dst, w):
                    key = (int(s), int(d))
                    merged[key] = max(merged.get(key, 0.0), float(weight))
            return self._pair_arrays(merged)
        src = np.array([], dtype=int)
        return self.pairs.get(kind, (src, src.copy(), np.array([], dtype=float)))

    def gcn_operator(self, kind):
        if kind not in self._gcn:
            src, dst, w = self._kind_pairs(kind)
            n = self.n_nodes
            a_hat = sp.coo_matrix((w, (dst, src)), shape=(n, n)) + sp.identity(n)
            inv_sqrt = 1.0 / np.sqrt(np.asarray(a_hat.sum(axis=1)).ravel())
            scale = sp.diags(inv_sqrt)
            self._gcn[kind] = (scale @ a_hat @ scale).tocsr()
        return self._gcn[kind]

    def sage_operator(self, kind):
        if kind not in self._sage:
            src, dst, w = self._kind_pairs(kind)
            n = self.n_nodes
            A = sp.coo_matrix((w, (dst, src)), shape=(n, n)).tocsr()
            totals = np.asarray(A.sum(axis=1)).ravel()
            inv = np.zeros(n)
            inv[totals != 0] = 1.0 / totals[totals != 0]
            P = (sp.diags(inv) @ A).tocsr()
            self._sage[kind] = (P, P.T.tocsr())
        return self._sage[kind]

    def gat_segments(self, kind):
        """Edges plus self-loops, sorted by receiver, with sender permutation."""
        if kind not in self._gat:
            src, dst, _ = self._kind_pairs(kind)
            loops = np.arange(self.n_nodes)
            missing = np.setdiff1d(loops, src[src == dst], assume_unique=False)
            senders = np.concatenate([src, missing])
            receivers = np.concatenate([dst, missing])
            order = np.lexsort((senders, receivers))
            r, s = receivers[order], senders[order]
            starts_r = np.searchsorted(r, loops)
            perm_s = np.argsort(s, kind="stable")
            starts_s = np.searchsorted(s[perm_s], loops)
            self._gat[kind] = (r, s, starts_r, perm_s, starts_s)
        return self._gat[kind]

    def readout_rows(self):
        """Mean over target-kind rows per graph, as (matrix-op, counts)."""
        return self.target_rows, self.target_starts, self.target_counts


# ---------------------------------------------------------------------------
# Layers with cached forward state and analytic backward


def _glorot(rng, fan_in, fan_out, shape=None):
    limit = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape or (fan_in, fan_out))


class GCNLayer:
    def __init__(self, in_dim, out_dim, edge_kinds, rng):
        self.edge_kinds = tuple(edge_kinds)
        self.params = {f"W:{k}": _glorot(rng, in_dim, out_dim) for k in self.edge_kinds}

    def forward(self, batch, X):
        self._msgs = {k: batch.gcn_operator(k) @ X for k in self.edge_kinds}
        Z = sum(self._msgs[k] @ self.params[f"W:{k}"] for k in self.edge_kinds)
        self._active = Z > 0
        return _finite("gcn layer output", relu(Z))

    def backward(self, batch, dH):
        dZ = dH * self._active
        grads, dX = {}, np.zeros((dH.shape[0], next(iter(self.params.values())).shape[0]))
        for k in self.edge_kinds:
            grads[f"W:{k}"] = self._msgs[k].T @ dZ
            dX += batch.gcn_operator(k).T @ (dZ @ self.params[f"W:{k}"].T)
        return dX, grads


class SAGELayer:
    def __init__(self, in_dim, out_dim, edge_kinds, rng):
        self.edge_kinds = tuple(edge_kinds)
        self.params = {"W_self": _glorot(rng, in_dim, out_dim)}
        for k in self.edge_kinds:
            self.params[f"W:{k}"] = _glorot(rng, in_dim, out_dim)

    def forward(self, batch, X):
        self._X = X
        self._msgs = {k: batch.sage_operator(k)[0] @ X for k in self.edge_kinds}
        Z = X @ self.params["W_self"]
        Z += sum(self._msgs[k] @ self.params[f"W:{k}"] for k in self.edge_kinds)
        self._active = Z > 0
        return _finite("sage layer output", relu(Z))

    def backward(self, batch, dH):
        dZ = dH * self._active
        grads = {"W_self": self._X.T @ dZ}
        dX = dZ @ self.params["W_self"].T
        for k in self.edge_kinds:
            grads[f"W:{k}"] = self._msgs[k].T @ dZ
            dX += batch.sage_operator(k)[1] @ (dZ @ self.params[f"W:{k}"].T)
        return dX, grads


class GATLayer:
    """Multi-head attention layer; heads concatenated or averaged."""

    def __init__(self, in_dim, out_dim, edge_kinds, heads, combine, rng):
        if combine == "concat":
            if out_dim % heads:
                raise ShapeMismatchError(f"out_dim {out_dim} not divisible by {heads} heads")
            self.head_dim = out_dim // heads
        elif combine == "mean":
            self.head_dim = out_dim
        else:
            raise ShapeMismatchError(f"unknown head combination {combine!r}")
        self.edge_kinds = tuple(edge_kinds)
        self.heads = heads
        self.combine = combine
        self.params = {}
        for k in self.edge_kinds:
            self.params[f"W:{k}"] = _glorot(rng, in_dim, self.head_dim)
            for h in range(heads):
                self.params[f"a:{k}:{h}"] = _glorot(
                    rng, 2 * self.head_dim, 1, shape=(2 * self.head_dim,)
                )

    def _head_forward(self, batch, kind, U, a):
        d = self.head_dim
        r, s, starts_r, _, _ = batch.gat_segments(kind)
        left = (U @ a[:d])[r]
        right = (U @ a[d:])[s]
        e = left + right
        e_act = leaky_relu(e)
        m = np.maximum.reduceat(e_act, starts_r)
        z = np.exp(e_act - m[r])
        denom = np.add.reduceat(z, starts_r)
        alpha = z / denom[r]
        out = np.add.reduceat(alpha[:, None] * U[s], starts_r, axis=0)
        return out, {"e": e, "alpha": alpha}

    def forward(self, batch, X):
        self._X = X
        self._state = {}
        Z = None
        for k in self.edge_kinds:
            U = X @ self.params[f"W:{k}"]
            head_outs = []
            for h in range(self.heads):
                out, cache = self._head_forward(batch, k, U, self.params[f"a:{k}:{h}"])
                head_outs.append(out)
                self._state[(k, h)] = cache
            self._state[k] = U
            if self.combine == "concat":
                merged = np.concatenate(head_outs, axis=1)
            else:
                merged = sum(head_outs) / self.heads
            Z = merged if Z is None else Z + merged
        self._active = Z > 0
        return _finite("gat layer output", relu(Z))

    def _head_backward(self, batch, kind, a, U, cache, dOut):
        d = self.head_dim
        r, s, starts_r, perm_s, starts_s = batch.gat_segments(kind)
        alpha, e = cache["alpha"], cache["e"]
        d_alpha = np.einsum("ij,ij->i", dOut[r], U[s])
        dU = np.add.reduceat((alpha[:, None] * dOut[r])[perm_s], starts_s, axis=0)
        seg_dot = np.add.reduceat(alpha * d_alpha, starts_r)
        de = alpha * (d_alpha - seg_dot[r]) * np.where(e >= 0, 1.0, LEAKY_SLOPE)
        d_left = np.add.reduceat(de, starts_r)
        d_right = np.add.reduceat(de[perm_s], starts_s)
        da = np.concatenate([U.T @ d_left, U.T @ d_right])
        dU += d_left[:, None] * a[None, :d] + d_right[:, None] * a[None, d:]
        return dU, da

    def backward(self, batch, dH):
        dZ = dH * self._active
        grads = {}
        dX = np.zeros_like(self._X)
        for k in self.edge_kinds:
            U = self._state[k]
            dU = np.zeros_like(U)
            for h in range(self.heads):
                if self.combine == "concat":
                    dOut = dZ[:, h * self.head_dim : (h + 1) * self.head_dim]
                else:
                    dOut = dZ / self.heads
                dU_h, da = self._head_backward(
                    batch, k, self.params[f"a:{k}:{h}"], U, self._state[(k, h)], dOut
                )
                dU += dU_h
                grads[f"a:{k}:{h}"] = da
            grads[f"W:{k}"] = self._X.T @ dU
            dX += dU @ self.params[f"W:{k}"].T
        return dX, grads


# ---------------------------------------------------------------------------
# Two-layer network with a linear head


class GNNModel:
    """Two GNN layers and a linear head mapping hidden features to 2 logits."""

    def __init__(self, config, schema):
        if config.architecture not in ARCHITECTURES:
            raise SchemaMismatchError(f"unknown architecture {config.architecture!r}")
        if config.task not in TRAIN_TASKS:
            raise SchemaMismatchError(f"unknown task {config.task!r}")
        self.config = config
        self.schema = schema
        kinds = EDGE_KINDS[schema.task] if config.relational_edges else (MERGED_KIND,)
        self.edge_kinds = tuple(sorted(kinds))
        rng = np.random.default_rng(config.seed)
        in_dim, hidden = schema.packed_width, config.hidden_dim
        if config.architecture == "gcn":
            self.layer1 = GCNLayer(in_dim, hidden, self.edge_kinds, rng)
            self.layer2 = GCNLayer(hidden, hidden, self.edge_kinds, rng)
        elif config.architecture == "sage":
            self.layer1 = SAGELayer(in_dim, hidden, self.edge_kinds, rng)
            self.layer2 = SAGELayer(hidden, hidden, self.edge_kinds, rng)
        else:
            self.layer1 = GATLayer(in_dim, hidden, self.edge_kinds, config.heads, "concat", rng)
            self.layer2 = GATLayer(hidden, hidden, self.edge_kinds, config.heads, "mean", rng)
        self.head = {"W": _glorot(rng, hidden, 2), "b": np.zeros(2)}

    # -- parameter plumbing

    def parameters(self):
        out = {}
        for prefix, holder in (("layer1", self.layer1.params),
                               ("layer2", self.layer2.params),
                               ("head", self.head)):
            for name, value in holder.items():
                out[f"{prefix}.{name}"] = value
        return out

    def set_parameters(self, params):
        holders = {"layer1": self.layer1.params, "layer2": self.layer2.params,
                   "head": self.head}
        for key, value in params.items():
            prefix, _, name = key.partition(".")
            holder = holders.get(prefix)
            if holder is None or name not in holder or holder[name].shape != value.shape:
                raise ShapeMismatchError(f"checkpoint parameter {key} does not fit the model")
            holder[name] = np.asarray(value, dtype=float)

    # -- forward / backward

    def node_hidden(self, batch):
        h1 = self.layer1.forward(batch, batch.X)
        return self.layer2.forward(batch, h1)

    def _pool(self, batch, H):
        rows, starts, counts = batch.readout_rows()
        sums = np.add.reduceat(H[rows], starts, axis=0)
        return sums / counts[:, None]

    def logits(self, batch):
        H = self.node_hidden(batch)
        self._H = H
        if self.config.task == "graph_classification":
            pooled = self._pool(batch, H)
            self._pooled = pooled
            return pooled @ self.head["W"] + self.head["b"]
        return H[batch.target_rows] @ self.head["W"] + self.head["b"]

    def backward(self, batch, d_logits):
        grads = {"head.b": d_logits.sum(axis=0)}
        if self.config.task == "graph_classification":
            grads["head.W"] = self._pooled.T @ d_logits
            d_pooled = d_logits @ self.head["W"].T
            rows, _, counts = batch.readout_rows()
            dH = np.zeros_like(self._H)
            dH[rows] = d_pooled[batch.graph_of[rows]] / counts[batch.graph_of[rows], None]
        else:
            rows = batch.target_rows
            grads["head.W"] = self._H[rows].T @ d_logits
            dH = np.zeros_like(self._H)
            dH[rows] = d_logits @ self.head["W"].T
        dh1, g2 = self.layer2.backward(batch, dH)
        _, g1 = self.layer1.backward(batch, dh1)
        for name, value in g2.items():
            grads[f"layer2.{name}"] = value
        for name, value in g1.items():
            grads[f"layer1.{name}"] = value
        return grads

    def loss_and_gradients(self, batch, labels):
        loss, d_logits = loss_ce(self.logits(batch), labels)
        return loss, self.backward(batch, d_logits)


# ---------------------------------------------------------------------------
# Training


class TrainConfig:
    """Hyperparameters and task routing for one training run."""

    def __init__(self, smell, architecture, task="graph_classification",
                 learning_rate=1e-3, epochs=200, seed=0, hidden_dim=64,
                 heads=2, relational_edges=True, val_fraction=0.2):
        if smell not in GRAPH_LEVEL:
            raise SchemaMismatchError(f"unknown smell task {smell!r}")
        if architecture not in ARCHITECTURES:
            raise SchemaMismatchError(f"unknown architecture {architecture!r}")
        if task not in TRAIN_TASKS:
            raise SchemaMismatchError(f"unknown task {task!r}")
        if learning_rate < 0 or epochs < 0 or hidden_dim <= 0 or heads <= 0:
            raise ShapeMismatchError("hyperparameters must be positive")
        if not 0 <= val_fraction < 1:
            raise ShapeMismatchError(f"val_fraction {val_fraction} outside [0, 1)")
        self.smell = smell
        self.architecture = architecture
        self.task = task
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.seed = seed
        self.hidden_dim = hidden_dim
        self.heads = heads
        self.relational_edges = relational_edges
        self.val_fraction = val_fraction

    def to_json(self):
        return dict(self.__dict__)

    @classmethod
    def from_json(cls, doc):
        return cls(**doc)


class TrainResult:
    def __init__(self, model, log, best_epoch):
        self.model = model
        self.log = log
        self.best_epoch = best_epoch


def _usable(graph, task, target):
    if task == "graph_classification":
        return graph.graph_label in (0, 1)
    return any(n.kind == target and n.label is not None for n in graph.nodes)


def _batch_labels(batch, task):
    if task == "graph_classification":
        return batch.graph_labels
    return batch.labels[batch.target_rows]


def binary_f1(gold, predicted, ignore_label=-1):
    """F1 of the positive class; 0 when precision + recall is 0."""
    y, p = np.asarray(gold), np.asarray(predicted)
    keep = y != ignore_label
    y, p = y[keep], p[keep]
    tp = int(np.sum((y == 1) & (p == 1)))
    fp = int(np.sum((y == 0) & (p == 1)))
    fn = int(np.sum((y == 1) & (p == 0)))
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def train(graph_list, config):
    """Full-batch training; returns the best-validation checkpoint and log."""
    target = TARGET_KIND[config.smell]
    usable = [g for g in graph_list if _usable(g, config.task, target)]
    if not usable:
        raise EmptyDatasetError(f"no labeled graphs for {config.smell} {config.task}")
    rng = np.random.default_rng(config.seed)
    order = rng.permutation(len(usable))
    n_val = int(round(config.val_fraction * len(usable)))
    n_val = min(len(usable) - 1, max(1, n_val)) if len(usable) > 1 else 0
    val_graphs = [usable[i] for i in order[:n_val]]
    train_graphs = [usable[i] for i in order[n_val:]]
    schema = gb.FeatureSchema.for_task(config.smell).fit(train_graphs)
    train_batch = GraphBatch(train_graphs, schema)
    val_batch = GraphBatch(val_graphs, schema) if val_graphs else None
    train_labels = _batch_labels(train_batch, config.task)

    model = GNNModel(config, schema)
    params, state = model.parameters(), adam_state()
    log, best_key, best_params, best_epoch = [], None, None, 0
    for epoch in range(config.epochs):
        try:
            loss, grads = model.loss_and_gradients(train_batch, train_labels)
            params, state = adam_step(params, grads, state, lr=config.learning_rate)
            model.set_parameters(params)
            if val_batch is not None:
                preds = np.argmax(model.logits(val_batch), axis=1)
                val_f1 = binary_f1(_batch_labels(val_batch, config.task), preds)
                key = (val_f1, -loss)
            else:
                val_f1 = None
                key = (-loss,)
        except NonFiniteError as err:
            raise NonFiniteError(f"training diverged at epoch {epoch}: {err}") from err
        log.append({"epoch": epoch, "loss": loss, "val_f1": val_f1})
        if best_key is None or key > best_key:
            best_key = key
            best_params = {k: v.copy() for k, v in params.items()}
            best_epoch = epoch
    if best_params is not None:
        model.set_parameters(best_params)
    return TrainResult(model, log, best_epoch)


def format_log(log):
    """Training log as deterministic JSON Lines."""
    return "".join(json.dumps(row, sort_keys=True) + "\n" for row in log)


# ---------------------------------------------------------------------------
# Prediction


def predict_graph(model, graph):
    """(label, class probabilities) for one graph."""
    if model.config.task != "graph_classification":
        raise SchemaMismatchError("model was trained for node classification")
    batch = GraphBatch([graph], model.schema)
    probs = softmax_rows(model.logits(batch))[0]
    return int(np.argmax(probs)), probs


def predict_nodes(model, graph, node_kind=None):
    """Per-node (label, probabilities) keyed by node id, for one node kind."""
    if model.config.task != "node_classification":
        raise SchemaMismatchError("model was trained for graph classification")
    kind = node_kind or TARGET_KIND[model.schema.task]
    batch = GraphBatch([graph], model.schema)
    H = model.node_hidden(batch)
    rows = [i for i, k in enumerate(batch.node_kinds) if k == kind]
    logits = H[rows] @ model.head["W"] + model.head["b"]
    probs = softmax_rows(logits)
    return {
        batch.node_ids[row]: (int(np.argmax(probs[j])), probs[j])
        for j, row in enumerate(rows)
    }


# ---------------------------------------------------------------------------
# Checkpoints


def checkpoint_to_json(result):
    model = result.model
    weights, shapes = {}, {}
    for name, value in sorted(model.parameters().items()):
        arr = np.ascontiguousarray(value, dtype="<f8")
        weights[name] = base64.b64encode(arr.tobytes()).decode("ascii")
        shapes[name] = list(arr.shape)
    return {
        "architecture": model.config.architecture,
        "schema": model.schema.to_json(),
        "shapes": shapes,
        "weights": weights,
        "config": model.config.to_json(),
        "seed": model.config.seed,
        "best_epoch": result.best_epoch,
    }


def save_checkpoint(result, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(checkpoint_to_json(result), fh, indent=2, sort_keys=True)
        fh.write("\n")


def checkpoint_from_json(doc):
    config = TrainConfig.from_json(doc["config"])
    schema = gb.FeatureSchema.from_json(doc["schema"])
    model = GNNModel(config, schema)
    params = {}
    for name, encoded in doc["weights"].items():
        raw = np.frombuffer(base64.b64decode(encoded), dtype="<f8")
        try:
            params[name] = raw.reshape(doc["shapes"][name]).astype(float)
        except ValueError as err:
            raise ShapeMismatchError(f"checkpoint weights for {name} do not fit: {err}")
    model.set_parameters(params)
    return TrainResult(model, [], doc.get("best_epoch", 0))


def load_checkpoint(path):
    with open(path, encoding="utf-8") as fh:
        return checkpoint_from_json(json.load(fh))

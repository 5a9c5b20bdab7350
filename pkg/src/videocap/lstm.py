"""One LSTM layer: forward step with cached activations, exact backward step.

Gate recurrence (i, f, o are input/forget/output gates, g the candidate):

    i = sigmoid(W_xi x + W_hi h_prev + b_i)
    f = sigmoid(W_xf x + W_hf h_prev + b_f)
    o = sigmoid(W_xo x + W_ho h_prev + b_o)
    g = tanh   (W_xg x + W_hg h_prev + b_g)
    c = f * c_prev + i * g
    h = o * tanh(c)

No peephole connections, no coupled gates. Parameters are stored
gate-stacked (row blocks ordered i, f, o, g) so one step costs two matvecs;
the per-gate matrices stay addressable as views (``w_xi`` etc.).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import DEFAULT_DTYPE, Rng, sigmoid


@dataclass
class LstmParams:
    """Weights of one layer. ``w_x`` is (4H, input_dim), ``w_h`` (4H, H), ``b`` (4H,)."""

    w_x: np.ndarray
    w_h: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        if self.w_x.ndim != 2 or self.w_h.ndim != 2 or self.b.ndim != 1:
            raise ValueError("LstmParams arrays must be (2-d, 2-d, 1-d)")
        four_h = self.w_h.shape[0]
        if four_h % 4 != 0 or self.w_h.shape[1] * 4 != four_h:
            raise ValueError(f"w_h must be (4H, H), got {self.w_h.shape}")
        if self.w_x.shape[0] != four_h or self.b.shape[0] != four_h:
            raise ValueError("gate-stacked shapes disagree: "
                             f"w_x {self.w_x.shape}, w_h {self.w_h.shape}, b {self.b.shape}")

    @property
    def input_dim(self) -> int:
        return self.w_x.shape[1]

    @property
    def hidden_dim(self) -> int:
        return self.w_h.shape[1]

    def _gate(self, arr: np.ndarray, k: int) -> np.ndarray:
        h = self.hidden_dim
        return arr[k * h:(k + 1) * h]

    # Per-gate views, in stack order i, f, o, g.
    @property
    def w_xi(self): return self._gate(self.w_x, 0)
    @property
    def w_xf(self): return self._gate(self.w_x, 1)
    @property
    def w_xo(self): return self._gate(self.w_x, 2)
    @property
    def w_xg(self): return self._gate(self.w_x, 3)
    @property
    def w_hi(self): return self._gate(self.w_h, 0)
    @property
    def w_hf(self): return self._gate(self.w_h, 1)
    @property
    def w_ho(self): return self._gate(self.w_h, 2)
    @property
    def w_hg(self): return self._gate(self.w_h, 3)
    @property
    def b_i(self): return self._gate(self.b, 0)
    @property
    def b_f(self): return self._gate(self.b, 1)
    @property
    def b_o(self): return self._gate(self.b, 2)
    @property
    def b_g(self): return self._gate(self.b, 3)

    @classmethod
    def create(cls, input_dim: int, hidden_dim: int, rng: Rng, scale: float = 0.05,
               dtype=DEFAULT_DTYPE) -> "LstmParams":
        """Weights uniform in [-scale, scale], biases zero."""
        return cls(
            w_x=rng.uniform_array((4 * hidden_dim, input_dim), -scale, scale, dtype),
            w_h=rng.uniform_array((4 * hidden_dim, hidden_dim), -scale, scale, dtype),
            b=np.zeros(4 * hidden_dim, dtype=dtype),
        )

    @classmethod
    def zeros(cls, input_dim: int, hidden_dim: int, dtype=DEFAULT_DTYPE) -> "LstmParams":
        return cls(
            w_x=np.zeros((4 * hidden_dim, input_dim), dtype=dtype),
            w_h=np.zeros((4 * hidden_dim, hidden_dim), dtype=dtype),
            b=np.zeros(4 * hidden_dim, dtype=dtype),
        )

    def zeros_like(self) -> "LstmParams":
        return LstmParams(np.zeros_like(self.w_x), np.zeros_like(self.w_h), np.zeros_like(self.b))


@dataclass
class LstmState:
    """Recurrent state: hidden/control vector h and memory cell c."""

    h: np.ndarray
    c: np.ndarray

    @classmethod
    def zeros(cls, hidden_dim: int, dtype=DEFAULT_DTYPE) -> "LstmState":
        return cls(np.zeros(hidden_dim, dtype=dtype), np.zeros(hidden_dim, dtype=dtype))


@dataclass
class StepCache:
    """Intermediates of one forward step, consumed by the backward step."""

    x: np.ndarray
    h_prev: np.ndarray
    c_prev: np.ndarray
    gates: np.ndarray   # (4H,) activations, stacked i, f, o, g
    c: np.ndarray
    tanh_c: np.ndarray


def lstm_step(params: LstmParams, x: np.ndarray, prev: LstmState) -> tuple[LstmState, StepCache]:
    """Advance one time step; returns the new state and the backward cache."""
    hd = params.hidden_dim
    if x.shape != (params.input_dim,):
        raise ValueError(f"input has shape {x.shape}, expected ({params.input_dim},)")
    if prev.h.shape != (hd,) or prev.c.shape != (hd,):
        raise ValueError(f"state has shapes {prev.h.shape}/{prev.c.shape}, expected ({hd},)")

    pre = params.w_x @ x + params.w_h @ prev.h + params.b
    gates = np.empty_like(pre)
    gates[:3 * hd] = sigmoid(pre[:3 * hd])
    gates[3 * hd:] = np.tanh(pre[3 * hd:])
    i, f, o, g = gates[:hd], gates[hd:2 * hd], gates[2 * hd:3 * hd], gates[3 * hd:]

    c = f * prev.c + i * g
    tanh_c = np.tanh(c)
    h = o * tanh_c
    return LstmState(h, c), StepCache(x=x, h_prev=prev.h, c_prev=prev.c,
                                      gates=gates, c=c, tanh_c=tanh_c)


def lstm_step_backward(params: LstmParams, cache: StepCache, dh: np.ndarray, dc: np.ndarray,
                       grads: LstmParams | None = None,
                       ) -> tuple[LstmParams, np.ndarray, np.ndarray, np.ndarray]:
    """Backpropagate one step.

    Given upstream gradients (dh, dc) of a scalar loss with respect to this
    step's outputs, returns (param_grads, dx, dh_prev, dc_prev). When a
    ``grads`` container is supplied, parameter gradients are accumulated
    into it (used when unrolling over time).
    """
    hd = params.hidden_dim
    if dh.shape != (hd,) or dc.shape != (hd,):
        raise ValueError(f"upstream gradients have shapes {dh.shape}/{dc.shape}, expected ({hd},)")
    if cache.gates.shape != (4 * hd,) or cache.x.shape != (params.input_dim,):
        raise ValueError("cache does not match these parameters")
    if grads is None:
        grads = params.zeros_like()

    i, f, o, g = (cache.gates[:hd], cache.gates[hd:2 * hd],
                  cache.gates[2 * hd:3 * hd], cache.gates[3 * hd:])
    tc = cache.tanh_c

    dc_total = dc + dh * o * (1.0 - tc * tc)
    d_pre = np.empty_like(cache.gates)
    d_pre[:hd] = dc_total * g * i * (1.0 - i)            # input gate
    d_pre[hd:2 * hd] = dc_total * cache.c_prev * f * (1.0 - f)   # forget gate
    d_pre[2 * hd:3 * hd] = dh * tc * o * (1.0 - o)       # output gate
    d_pre[3 * hd:] = dc_total * i * (1.0 - g * g)        # candidate

    grads.w_x += np.outer(d_pre, cache.x)
    grads.w_h += np.outer(d_pre, cache.h_prev)
    grads.b += d_pre

    dx = params.w_x.T @ d_pre
    dh_prev = params.w_h.T @ d_pre
    dc_prev = dc_total * f
    return grads, dx, dh_prev, dc_prev

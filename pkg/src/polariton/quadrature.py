"""Filon quadrature for sine-weighted integrals on a uniform grid."""

import numpy as np

# below this value of theta = omega*h the closed-form weights lose digits
_SERIES_THETA = 1.0 / 6.0


def filon_weights(theta):
    """Filon's alpha, beta, gamma for ``theta = omega * h`` (array ok)."""
    t = np.asarray(theta, dtype=float)
    small = np.abs(t) < _SERIES_THETA
    ts = np.where(small, t, 1.0)
    tl = np.where(small, 1.0, t)

    t2 = ts * ts
    a_s = ts * t2 * (2 / 45 + t2 * (-2 / 315 + t2 * (2 / 4725 + t2 * (-8 / 467775 + t2 * 4 / 8513505))))
    b_s = 2 / 3 + t2 * (2 / 15 + t2 * (-4 / 105 + t2 * (2 / 567 + t2 * (-4 / 22275 + t2 * 4 / 675675))))
    g_s = 4 / 3 + t2 * (-2 / 15 + t2 * (1 / 210 + t2 * (-1 / 11340 + t2 * (1 / 997920 - t2 / 129729600))))

    s, c = np.sin(tl), np.cos(tl)
    l3 = tl**3
    a_l = (tl * tl + tl * s * c - 2 * s * s) / l3
    b_l = 2 * (tl * (1 + c * c) - 2 * s * c) / l3
    g_l = 4 * (s - tl * c) / l3

    return (
        np.where(small, a_s, a_l),
        np.where(small, b_s, b_l),
        np.where(small, g_s, g_l),
    )


def filon_sin(f, x0, h, omega):
    """``int_{x0}^{x0 + N h} f(x) sin(omega x) dx`` for each ``omega``.

    ``f`` holds samples on the uniform grid ``x0 + i h``, ``i = 0..N`` with
    ``N`` even.  ``omega`` may be a scalar or 1-D array; the result has the
    shape of ``omega``.
    """
    f = np.asarray(f, dtype=float)
    n = f.size - 1
    if n < 2 or n % 2:
        raise ValueError("filon_sin needs an odd number (>= 3) of samples")
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    x = x0 + h * np.arange(f.size)
    alpha, beta, gamma = filon_weights(w * h)

    arg = np.outer(w, x)
    sn = np.sin(arg)
    s_even = sn[:, 0::2] @ f[0::2] - 0.5 * (f[0] * sn[:, 0] + f[-1] * sn[:, -1])
    s_odd = sn[:, 1::2] @ f[1::2]
    ends = f[0] * np.cos(w * x[0]) - f[-1] * np.cos(w * x[-1])
    out = h * (alpha * ends + beta * s_even + gamma * s_odd)
    return out if np.ndim(omega) else float(out[0])

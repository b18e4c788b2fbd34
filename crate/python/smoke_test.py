"""Smoke test for the `blip` extension module.

Build and install first, e.g. `pip install ./crates/python` (needs maturin),
then run `python3 python/smoke_test.py`.
"""

import math
import os
import tempfile

import blip


def close(a, b, tol=1e-15):
    return abs(a - b) <= tol


def main():
    assert close(blip.gadd(0.5, 0.5), 0.8)
    assert close(blip.gsub(0.8, 0.5), 0.5)
    assert close(blip.gscale(0.5, 0.8), 0.5)
    assert close(blip.gnorm(0.5), math.atanh(0.5))
    assert close(blip.gneg(0.3), -0.3, 1e-16)
    assert close(blip.phi_inv(blip.phi(0.25)), 0.25)
    assert blip.phi_inv(1000.0) < 1.0
    neg = blip.cneg((0.449, -0.241, -0.164))
    assert all(close(a, b, 2e-16) for a, b in zip(neg, (-0.449, 0.241, 0.164)))
    try:
        blip.gadd(1.0, 0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("1.0 is not a gray level")

    assert blip.parse("1.43 <x> f<->1.39<x>v <-> I_G") == "1.43 <x> f <-> 1.39 <x> v <-> I_G"
    try:
        blip.parse("f <+>")
    except ValueError as e:
        assert "position 6" in str(e)
    else:
        raise AssertionError("expected a syntax error")

    w, h = 16, 8
    codes = bytes((x * 16 + y * 3) % 256 for y in range(h) for x in range(w) for _ in range(3))
    f = blip.Image.from_codes(w, h, 3, codes)
    assert (f.width, f.height, f.kind) == (w, h, "color")
    assert f.codes() == codes
    assert (-(-f)).codes() == codes

    v = (0.449, -0.241, -0.164)
    g_dsl = f.apply("2.5 <x> (f <-> 0.7 <x> v)", v=v)
    g_hand = 2.5 * (f - 0.7 * blip.Image.constant(w, h, v))
    assert g_dsl == g_hand
    assert f.apply("f <+> 0.5") == f + blip.Image.constant(w, h, (0.5, 0.5, 0.5))
    ig = f.gaussian_correction(2.0)
    assert f.apply("1.43 <x> f <-> 1.39 <x> v <-> I_G", v=v, I_G=ig).kind == "color"
    assert (f.pos_part() + f.neg_part()) == f

    null = blip.Image.from_codes(4, 4, 1, bytes([128] * 16))
    assert close(null.l2_norm(), 4 * math.atanh(1 / 256), 1e-15)

    step = blip.Image.from_values(4, 1, [-0.5, -0.5, 0.5, 0.5])
    assert step.rel_contrast((1, 0), (2, 0)) == -step.rel_contrast((2, 0), (1, 0))
    cmap = step.contrast("horizontal")
    assert cmap.values()[0] == 0.0 and cmap.values()[3] == 0.0
    assert cmap.values()[1] > 0.0
    assert list(blip.Image.constant(5, 5, 0.3).contrast("pixel", 8).render_contrast()) == [0] * 25

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "f.ppm")
        f.write(path)
        assert blip.Image.read(path) == f
        assert blip.Image.from_pnm(f.to_pnm()) == f

    print("blip smoke test: ok")


if __name__ == "__main__":
    main()

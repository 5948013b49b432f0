"""Smoke test for the affine_atlas extension module."""

import math

import affine_atlas as aa


def close(a, b, tol=1e-9):
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def main():
    f = aa.AffineMap([[2.0, 1.0], [0.0, 1.0]], [1.0, -1.0])
    g = aa.AffineMap([[0.0, -1.0], [1.0, 0.0]], [0.5, 0.0])
    p = [0.3, -1.2]
    assert close((f @ g)(p), f(g(p)))
    assert (f @ f.inverse()).approx_eq(aa.AffineMap.identity(2))
    assert aa.AffineMap.from_json(f.to_json()).approx_eq(f)

    half = aa.AffineMap([[0.5, 0.0], [0.0, 1.0]], [0.0, 0.0])
    assert aa.classify(half)["tag"] == "NonProperScaling"

    h = aa.AffineMap([[1.0, 0.3], [0.0, 2.0]], [1.0, 0.0])
    block = aa.block_decompose(h)
    assert block["r"] == 1.0
    nf = aa.shear_normal_form(h)
    assert max(abs(x) for x in nf["normalized"]["w"]) < 1e-9

    line3 = aa.build_example("InvariantLine3Torus", lambda_=2.0)
    a = aa.generator(line3["presentation"], 0)
    assert aa.classify(a)["tag"] == "NonCompactInvariantPlane"
    ba = aa.evaluate(line3["presentation"], [(1, 1), (0, 1)])
    assert ba.approx_eq(aa.generator(line3["presentation"], 1) @ a)

    hopf = aa.build_example("HopfCylinder")
    assert aa.radiant_conjugator(hopf["presentation"]) is not None

    complex_ = {
        "dimension": 2,
        "charts": ["0", "1"],
        "transitions": [{"from": "0", "to": "1", "map": aa.AffineMap([[1, 0], [0, 1]], [1, 0]).to_json()}],
    }
    path = {"segments": [{"chart": "0", "points": [[0, 0]]}, {"chart": "1", "points": [[-1, 0], [-1, 1]]}]}
    assert close(aa.develop(complex_, path)["terminal"], [0.0, 1.0])

    assert close(aa.flow("Radial", math.log(2.0), [1.0, 1.0]), [0.5, 0.5])
    assert aa.radial_saturation_contains([0.5, 0.0], 1.0, [3.0, 4.0])
    assert not aa.radial_saturation_contains([5.0, 0.0], 1.0, [0.0, 1.0])

    torus = aa.build_example("SimilarityTorus")
    job = {
        "polygon": torus["metadata"]["fundamental_domain"],
        "group": torus["presentation"],
        "max_word_length": 3,
    }
    svg = aa.render_tiling(job)
    assert 'data-word="e" d="M 0 0 L 2 0 L 1 1 L 0 1 Z"' in svg

    try:
        aa.AffineMap([[1.0, 2.0], [2.0, 4.0]], [0.0, 0.0])
    except ValueError:
        pass
    else:
        raise AssertionError("singular map accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()

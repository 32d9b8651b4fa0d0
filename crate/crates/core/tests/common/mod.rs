//! Helpers shared by the integration tests.
#![allow(dead_code)]

use centroframe::adaptation::G1Element;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_g1(rng: &mut ChaCha8Rng) -> G1Element {
    let mut block = || loop {
        let m: S2 = [[rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)], [rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)]];
        if (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs() > 0.3 {
            return m;
        }
    };
    let a = block();
    let b = block();
    G1Element { a, b, r: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)) }
}

pub type S2 = [[f64; 2]; 2];

fn mul2(x: &S2, y: &S2) -> S2 {
    let mut o = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            o[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    o
}

fn t2(x: &S2) -> S2 {
    [[x[0][0], x[1][0]], [x[0][1], x[1][1]]]
}

fn lin(a: f64, x: &S2, b: f64, y: &S2) -> S2 {
    let mut o = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            o[i][j] = a * x[i][j] + b * y[i][j];
        }
    }
    o
}

/// Plain-array transformation law: h^ν ↦ Aᵀ (Σ (B⁻¹)^ν_μ h^μ) A, h⁰ ↦ Aᵀh⁰A − r03 h³' − r04 h⁴'.
pub fn law(h: &[S2; 3], g: &G1Element) -> [S2; 3] {
    let [[b33, b34], [b43, b44]] = g.b;
    let det = b33 * b44 - b34 * b43;
    let cong = |x: &S2| mul2(&t2(&g.a), &mul2(x, &g.a));
    let n3 = cong(&lin(b44 / det, &h[1], -b34 / det, &h[2]));
    let n4 = cong(&lin(-b43 / det, &h[1], b33 / det, &h[2]));
    let n0 = lin(1.0, &lin(1.0, &cong(&h[0]), -g.r[0], &n3), -g.r[1], &n4);
    [n0, n3, n4]
}


/// 5-point central difference of order k in one variable.
fn weights(k: usize, h: f64) -> Vec<(f64, f64)> {
    match k {
        0 => vec![(0.0, 1.0)],
        1 => vec![(-2.0 * h, 1.0 / (12.0 * h)), (-h, -8.0 / (12.0 * h)), (h, 8.0 / (12.0 * h)), (2.0 * h, -1.0 / (12.0 * h))],
        2 => {
            let s = 12.0 * h * h;
            vec![(-2.0 * h, -1.0 / s), (-h, 16.0 / s), (0.0, -30.0 / s), (h, 16.0 / s), (2.0 * h, -1.0 / s)]
        }
        3 => {
            let s = 2.0 * h * h * h;
            vec![(-2.0 * h, -1.0 / s), (-h, 2.0 / s), (h, -2.0 / s), (2.0 * h, 1.0 / s)]
        }
        _ => unreachable!(),
    }
}

pub fn fd(f: &dyn Fn(f64, f64) -> f64, u: f64, v: f64, a: usize, b: usize) -> f64 {
    let est = |h: f64| {
        let mut s = 0.0;
        for (du, wu) in weights(a, h) {
            for (dv, wv) in weights(b, h) {
                s += wu * wv * f(u + du, v + dv);
            }
        }
        s
    };
    // Richardson on the leading h² error term
    let h = 1e-2;
    (4.0 * est(h / 2.0) - est(h)) / 3.0
}

//! 5x5 linear algebra: LU solve, the matrix exponential and its Taylor
//! lift, and the symmetric 2x2 helpers.

use centroframe::homogeneous::{model_omega, Model};
use centroframe::linalg::{expm, expm5, solve, spd2_sqrt, Mat5, Matrix, Sym2, PIVOT_TOL};
use centroframe::taylor::Taylor;

fn main() -> centroframe::Result<()> {
    let a = Mat5::from_fn(|i, j| if i == j { 4.0 } else { 1.0 / (1.0 + (i + 2 * j) as f64) });
    let b = [1.0, -2.0, 0.5, 3.0, 0.0];
    let x = solve(&a, &b, PIVOT_TOL)?;
    let r = a.mul_vec(&x);
    let res = r.iter().zip(b).fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
    println!("solve residual {res:.2e}");

    let [m0, m1, m2] = model_omega(Model::H2);
    for t in [0.5, 1.0, 2.0] {
        let e = expm5(&m1, t);
        let back = e.matmul(&expm5(&m1, -t));
        println!("exp(t M1) exp(-t M1) - I at t={t}: {:.2e}", back.max_diff(&Mat5::identity()));
    }
    let d = expm5(&m0, 1.0);
    println!("exp(M0) diagonal: {:?}", (0..5).map(|i| d.0[i][i]).collect::<Vec<_>>());

    // exp(u M2) as a jet in u: its u-derivative at 0 is M2
    let u = Taylor::var_u(4, 0.0);
    let mu: Matrix<Taylor, 5> = m2.map(|&c| u * c);
    let e = expm(&mu);
    let deriv = Mat5::from_fn(|i, j| e.0[i][j].derivative(1, 0));
    println!("d/du exp(u M2) at 0 vs M2: {:.2e}", deriv.max_diff(&m2));

    let s = Sym2::new(5.0, 2.0, 3.0);
    let r = spd2_sqrt(&s, 1e-12)?;
    let sq = r.to_matrix().matmul(&r.to_matrix());
    println!("sqrt of [[5,2],[2,3]]: [{:.6}, {:.6}, {:.6}], squared back {:?}", r.a, r.b, r.c, sq.0);
    Ok(())
}

//! The three homogeneous models: bracket tables, constant invariants,
//! the exponential parametrization and its defining quadrics.

use centroframe::homogeneous::{
    bracket_check, exp_product_point, model_metric, printed_subgroups, quadric_residual, structure_residual,
    MODELS,
};

fn main() -> centroframe::Result<()> {
    for model in MODELS {
        let c = model.constants();
        let r = structure_residual(&c, model.case())?;
        let worst = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        println!(
            "{model}: {} structure equations, residual {worst:.1e}, bracket residual {:.1e}, K = {:+.6}",
            r.len(),
            bracket_check(model),
            c.gauss_curvature()
        );

        let (u, v) = (0.7, -0.4);
        let (g, x) = exp_product_point(model, u, v, 0.0);
        let (_, xt) = exp_product_point(model, u, v, 1.3);
        let q = quadric_residual(model, &x);
        println!("  x({u}, {v}) = {x:.6?}  max quadric {:.1e}", q.iter().fold(0.0f64, |m, r| m.max(r.abs())));
        println!("  t-shift moves the point by {:.1e}", x.iter().zip(xt).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        if let Some([g0, g1, g2]) = printed_subgroups(model, u, v, 0.0) {
            let prod = g1.matmul(&g2).matmul(&g0);
            println!("  closed-form subgroups vs expm product: {:.1e}", prod.max_diff(&g));
        }
        let [e, f, gg] = model_metric(model, u, v)?;
        println!("  metric E={e:+.6} F={f:+.6} G={gg:+.6}");
    }
    Ok(())
}

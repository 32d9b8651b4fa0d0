//! The adaptation chain step by step on the hyperbolic model: first-order
//! frame, fundamental matrices, plane type, then the gauge reductions.

use centroframe::adaptation::{
    adapt2_spacelike, adapt2_timelike, adapt3, classify_plane, frame1, fundamental_matrices, maurer_cartan,
    SurfaceKind, Tolerances,
};
use centroframe::dsl::{builtin, eval_surface};

fn main() -> centroframe::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "h2".into());
    let spec = builtin(&name).ok_or_else(|| centroframe::Error::Config(format!("no built-in `{name}`")))?;
    let tol = Tolerances::default();
    let (u, v) = (0.4, -0.2);

    let jet = eval_surface(&spec, u, v, 5)?;
    let f1 = frame1(&jet, &tol)?;
    let mc1 = maurer_cartan(&f1, &tol)?;
    println!("level 1: vanishing forms residual {:.2e}", mc1.vanishing_residual());
    if let Some(r) = mc1.structure_residual() {
        println!("         dω + ω∧ω residual {r:.2e}");
    }

    let fd = fundamental_matrices(&mc1, &tol)?;
    for (label, h) in ["h0", "h3", "h4"].iter().zip(fd.values()) {
        println!("  {label} = [{:+.6}, {:+.6}; {:+.6}, {:+.6}]", h.a, h.b, h.b, h.c);
    }
    let ty = classify_plane(&fd, &tol)?;
    println!("plane: {} (det {:+.6e})", ty.kind.name(), ty.det);

    let (f2, gauge2) = match ty.kind {
        SurfaceKind::SpaceLike => {
            let (f, eps, g) = adapt2_spacelike(&f1, &fd, &tol)?;
            println!("epsilon = {eps:+}");
            (f, g)
        }
        _ => adapt2_timelike(&f1, &fd, &tol)?,
    };
    println!("level 2 gauge moved {:.3e} from the identity", gauge2.distance_from_identity());
    let (f3, gauge3) = adapt3(&f2, &ty, &tol)?;
    println!("level 3 gauge moved {:.3e} from the identity", gauge3.distance_from_identity());

    let mc3 = maurer_cartan(&f3, &tol)?;
    let w = mc3.du.values();
    println!("ω(∂u) of the adapted frame:");
    for row in w.0 {
        println!("  {}", row.iter().map(|x| format!("{x:+9.5}")).collect::<Vec<_>>().join(" "));
    }
    Ok(())
}

//! Runs the positive-clique reduction on an equiangular code and certifies the
//! projected `L(alpha, t)`-code.

use equicode::codes::AngleParams;
use equicode::bounds::schnirelman_applied_certificate;
use equicode::constructions::lemmens_seidel_code;
use equicode::graph::{lambda_inequality_check, reduction_pipeline};
use equicode::Tolerance;

fn main() -> equicode::Result<()> {
    let tol = Tolerance::default();
    let code = lemmens_seidel_code(12)?;
    let out = reduction_pipeline(&code, 6, &tol)?;

    println!("clique {:?} found by {}", out.clique, out.clique_method);
    println!("switched {:?}", out.switched);
    for b in &out.buckets {
        println!("  |T| = {:>2}  |S_T| = {}", b.size, b.vertices.len());
    }
    let a = out.accounting;
    println!("{} = {} + {} + {}  holds: {}", a.total, a.s_y, a.others, a.clique, a.holds);

    if let Some(projected) = &out.projected {
        let params = AngleParams::new(out.alpha, out.t)?;
        let s = schnirelman_applied_certificate(projected, &params, &tol)?;
        let l = lambda_inequality_check(projected, &params, &tol)?;
        println!("projected code: {} vectors, valid {:?}", projected.len(), out.projected_valid);
        println!("schnirelman {} <= {:.4}  pass {}", s.lhs, s.rhs, s.pass);
        println!("lambda      value {:.6}  lambda1 {:.4}  pass {}", l.rhs, l.measurements["lambda1"], l.pass);
    }
    Ok(())
}

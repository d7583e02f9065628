//! The 28 lines in `R^7`: permutations of `(1,1,1,1,1,1,-3,-3)`, which meet the
//! outer-product dimension bound `C(8, 2)` exactly.

use equicode::bounds::{dgs_bound_check, gerzon_certificate};
use equicode::codes::{validate_code, AngleSet};
use equicode::constructions::seven_dim_28_lines;
use equicode::Tolerance;

fn main() -> equicode::Result<()> {
    let tol = Tolerance::default();
    let code = seven_dim_28_lines();
    let angles = AngleSet::points(&[-1.0 / 3.0, 1.0 / 3.0], tol.angle_tol)?;
    let report = validate_code(&code, &angles);
    println!("validate against {angles}: {} violations", report.violations.len());

    let gerzon = gerzon_certificate(&code, &tol)?;
    println!(
        "gerzon  {} <= {}  rank {}  outer-product rank {}  pass {}",
        gerzon.lhs, gerzon.rhs, gerzon.measurements["rank"], gerzon.measurements["outer_rank"], gerzon.pass
    );
    let dgs = dgs_bound_check(&code, &angles, &tol)?;
    println!("dgs     {} <= {}  pass {}", dgs.lhs, dgs.rhs, dgs.pass);
    Ok(())
}

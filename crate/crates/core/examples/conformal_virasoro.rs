//! The Virasoro Lie conformal algebra: its λ-bracket and axiom check, then
//! the cochain differential squaring to zero on a sweep of cochains.

use operad_deform::conformal::{cochain_sweep, dsk_differential, DegreeCaps, LieConformalAlgebra};
use operad_deform::linalg::ExactScalar;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vir = LieConformalAlgebra::virasoro().with_caps(DegreeCaps { lambda: 12, t: 12 })?;
    println!("[L_λ L] = {}", vir.bracket(0, 0).render(vir.names()));
    let report = vir.check_axioms();
    println!("axioms: {} pairs, {} triples, pass {}", report.pairs_checked, report.triples_checked, report.passes());

    let bent = LieConformalAlgebra::virasoro_with(2, ExactScalar::from_integer(1.into()));
    println!("with a λ² central term instead: pass {}", bent.check_axioms().passes());

    for n in 1..=2 {
        let sweep = cochain_sweep(&vir, n, 1)?;
        let mut nonzero = 0;
        for c in &sweep {
            let d = dsk_differential(&vir, c)?;
            nonzero += usize::from(!d.is_zero());
            assert!(dsk_differential(&vir, &d)?.is_zero());
        }
        println!("arity {n}: {} cochains, {nonzero} with nonzero differential, d² = 0 on all", sweep.len());
    }
    Ok(())
}

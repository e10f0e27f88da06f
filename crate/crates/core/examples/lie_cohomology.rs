//! Chevalley–Eilenberg cohomology with adjoint coefficients, computed as
//! the cohomology of the twisted convolution complex.

use operad_deform::convolution::binary_tensor;
use operad_deform::deformation::{twisted_cohomology, AlgebraStructure, Flavor};
use operad_deform::linalg::ExactScalar;

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_integer(n.into())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let solvable = binary_tensor(2, &[((0, 1), vec![int(0), int(1)]), ((1, 0), vec![int(0), int(-1)])]);
    let heisenberg = binary_tensor(3, &[((0, 1), vec![int(0), int(0), int(1)]), ((1, 0), vec![int(0), int(0), int(-1)])]);
    for (name, mu) in [("aff(1)", solvable), ("heisenberg", heisenberg)] {
        let a = AlgebraStructure::new(Flavor::Lie, mu)?;
        let report = twisted_cohomology(&a, 0..=2)?;
        for (k, d) in &report.degrees {
            println!("{name}: H^{k} = {} (cochains {}, cocycles {}, coboundaries {})",
                d.dimension, d.cochains, d.cocycles, d.coboundaries);
        }
    }
    Ok(())
}

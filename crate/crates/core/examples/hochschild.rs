//! Hochschild cohomology of the dual numbers K[ε]/ε², with cocycle
//! representatives.

use operad_deform::convolution::binary_tensor;
use operad_deform::deformation::{twisted_cohomology, AlgebraStructure, Flavor};
use operad_deform::linalg::ExactScalar;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (z, o) = (ExactScalar::from_integer(0.into()), ExactScalar::from_integer(1.into()));
    let mu = binary_tensor(
        2,
        &[((0, 0), vec![o.clone(), z.clone()]), ((0, 1), vec![z.clone(), o.clone()]), ((1, 0), vec![z, o])],
    );
    let a = AlgebraStructure::new(Flavor::Associative, mu)?;
    let report = twisted_cohomology(&a, 0..=3)?;
    for (k, d) in &report.degrees {
        println!("HH^{k} = {}", d.dimension);
        for r in &d.representatives {
            println!("    {}", r.join(" "));
        }
    }
    Ok(())
}

//! A current Lie conformal algebra with central extension, and the
//! reduction of constant cochains to Chevalley–Eilenberg cochains.

use operad_deform::conformal::{ce_intertwines, dsk_differential, ConformalCochain, LieConformalAlgebra};
use operad_deform::convolution::{binary_tensor, StructureTensor};
use operad_deform::deformation::{CochainSpace, Flavor};
use operad_deform::linalg::ExactScalar;

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_integer(n.into())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mu = binary_tensor(2, &[((0, 1), vec![int(0), int(1)]), ((1, 0), vec![int(0), int(-1)])]);
    let form = vec![vec![int(1), int(0)], vec![int(0), int(0)]];
    let cur = LieConformalAlgebra::current(&mu, &form)?;
    for i in 0..2 {
        for j in 0..2 {
            println!("[{}_λ {}] = {}", cur.names()[i], cur.names()[j], cur.bracket(i, j).render(cur.names()));
        }
    }
    println!("axioms hold: {}", cur.check_axioms().passes());

    // the identity on the currents, zero on the central element
    let f = ConformalCochain::from_constant_tensor(&cur, &StructureTensor::identity(cur.rank()))?;
    let d = dsk_differential(&cur, &f)?;
    println!("d(id) = {:?}", d.to_document(&cur).values);

    let plain = LieConformalAlgebra::from_lie_bracket(&mu)?;
    let space = CochainSpace::new(Flavor::Lie, 2, 2);
    let all = (0..space.dim()).map(|j| ce_intertwines(&plain, &space.basis_tensor(j))).collect::<Result<Vec<_>, _>>()?;
    println!("constant 2-cochains match the Chevalley–Eilenberg differential: {}", all.iter().all(|b| *b));
    Ok(())
}


//! Homology of the cobar construction on the Koszul dual cooperad. For a
//! Koszul operad it sits in one degree and recovers the operad.

use operad_deform::operadcore::{cobar_homology, quadratic_operad_component, QuadraticData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    for name in ["lie", "com", "ass"] {
        let data = QuadraticData::preset(name)?;
        let h = cobar_homology(&data, n)?;
        let expected = quadratic_operad_component(&data, n)?.dim();
        println!(
            "{name}({n}): chains {:?}, homology {:?}, d² = 0: {}, operad dim {expected}",
            h.chain_dims, h.homology, h.d_squared_zero
        );
    }
    Ok(())
}

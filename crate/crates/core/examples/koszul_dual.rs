//! Koszul dual cooperad components for the bundled quadratic data, split
//! by weight with their homological degree.

use operad_deform::operadcore::{koszul_dual_component, QuadraticData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["lie", "com", "ass"] {
        let data = QuadraticData::preset(name)?;
        for n in 2..=5 {
            let c = koszul_dual_component(&data, n)?;
            let pieces: Vec<String> = c
                .pieces
                .iter()
                .map(|p| format!("weight {} degree {} dim {}", p.weight, p.degree, p.dim()))
                .collect();
            println!("{name}^c!({n}): dim {:>2}  [{}]", c.dim(), pieces.join("; "));
        }
    }
    Ok(())
}

//! Prints the bundled quadratic data (Lie, Com, Ass) as JSON documents,
//! the format accepted by `koszul-dual` and `cobar-homology`.
//!
//! cargo run --example quadratic_presets -- lie

use operad_deform::operadcore::QuadraticData;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "lie".into());
    let data = QuadraticData::preset(&name)?;
    println!("{}", serde_json::to_string_pretty(&data.to_document())?);
    Ok(())
}

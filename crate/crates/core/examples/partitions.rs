//! Set partitions of [n] (classes of surjections) counted by blocks, with
//! the dimension count for coisson cochains.

use std::collections::BTreeMap;

use operad_deform::operadcore::{quadratic_operad_component, QuadraticData};
use operad_deform::symmetry::{
    coisson_component_dimension, special_filtration_multiplicities, surjection_classes, surjection_classes_by_size,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let all = surjection_classes(n);
    println!("|Q([{n}])| = {}", all.len());
    for m in 1..=n {
        let parts = surjection_classes_by_size(n, m)?;
        let shown: Vec<String> = parts.iter().take(6).map(|p| format!("{p:?}")).collect();
        let more = if parts.len() > 6 { " .." } else { "" };
        println!("  {m} blocks: {:>3}  {}{more}", parts.len(), shown.join(" "));
    }

    if n <= 4 {
        let lie = QuadraticData::lie();
        let mut lie_dims = vec![0];
        for k in 1..=n {
            lie_dims.push(quadratic_operad_component(&lie, k)?.dim());
        }
        let ones: BTreeMap<_, _> = all.into_iter().map(|s| (s, 1)).collect();
        println!("coisson dimension with unit Hom spaces: {}", coisson_component_dimension(n, &ones, &lie_dims)?);
        println!("special filtration: {:?}", special_filtration_multiplicities(n, &lie_dims)?);
    }
    Ok(())
}

//! Order-by-order quantization of the log-canonical Poisson bracket on the
//! truncated plane K[x, y]/(x, y)³, compared with the exponential star
//! product up to gauge.

use num_traits::Zero;
use operad_deform::deformation::{classical_limit, gauge_equivalent, gauge_intertwines, quantize, TruncatedPlane};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let plane = TruncatedPlane::new(3);
    let names: Vec<String> = (0..plane.dim()).map(|i| plane.monomial_name(i)).collect();
    println!("basis: {}", names.join(", "));

    let Some(q) = quantize(&plane.structure(), &plane.log_canonical_bracket(), order)? else {
        println!("obstructed");
        return Ok(());
    };
    println!("reached order {} (certified {})", q.order(), q.certified_order());
    for k in 1..=q.order() {
        let nonzero = q.term(k).entries().filter(|(_, v)| !v.is_zero()).count();
        println!("  α_{k}: {nonzero} nonzero entries");
    }

    let exp = plane.exponential_family(order)?;
    let g_order = order.min(2);
    match gauge_equivalent(&q, &exp, g_order)? {
        Some(g) => println!(
            "gauge to the exponential family up to order {g_order}: trivial {}, verified {}",
            g.is_trivial(),
            gauge_intertwines(&q, &exp, &g)
        ),
        None => println!("no gauge up to order {g_order}"),
    }

    let lim = classical_limit(&q, true)?;
    println!(
        "classical limit: product matches {}, bracket matches {}, Leibniz {:?}, Jacobi {:?}",
        lim.product == plane.product(),
        lim.bracket == plane.log_canonical_bracket(),
        lim.leibniz,
        lim.jacobi
    );
    Ok(())
}

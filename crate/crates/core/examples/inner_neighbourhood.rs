//! Exact volume of the inner ε-neighbourhood of a random polytope, checked
//! against its envelopes at a few values of ε.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use inbody::metrics::inradius;
use inbody::neighbourhood::{bounds_report, inner_parallel_body, scale_copy_containment_check};
use inbody::shapes::random_polytope;
use inbody::validate_body;

fn main() -> inbody::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let body = validate_body(&random_polytope(3, &mut rng))?;
    let r = inradius(&body);
    println!("{} facets, inradius {r:.6}", body.system().halfspaces.len());
    println!(
        "{:>10} {:>10} {:>10} {:>10} {:>10}  ok  scale copy",
        "eps", "g/n", "chord", "vol(L)", "g"
    );
    for frac in [0.1, 0.25, 0.5, 0.75, 0.9] {
        let eps = frac * r;
        let b = bounds_report(&body, eps)?;
        let copy = scale_copy_containment_check(&body, eps)?;
        println!(
            "{eps:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}  {}  {copy}",
            b.g_over_n, b.chord, b.l, b.g, b.ok
        );
    }
    if let Some(inner) = inner_parallel_body(&body, 0.5 * r)? {
        println!(
            "inner parallel body at In/2 has {} vertices",
            inner.vertices().len()
        );
    }
    Ok(())
}

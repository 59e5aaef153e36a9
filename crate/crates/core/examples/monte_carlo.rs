//! Monte Carlo estimates of vol(Ω) and vol(L_ε) next to the exact values.

use inbody::metrics::{inradius, volume};
use inbody::neighbourhood::vol_inner_neighbourhood;
use inbody::oracle::{mc_inner_volume, mc_volume};
use inbody::shapes::regular_simplex;
use inbody::validate_body;

fn main() -> inbody::Result<()> {
    let body = validate_body(&regular_simplex(3))?;
    let eps = 0.5 * inradius(&body);
    let samples = 1_000_000;
    let seed = 42;

    let exact = volume(&body);
    let est = mc_volume(&body, samples, seed)?;
    println!(
        "vol      exact {exact:.6}  estimate {:.6} ± {:.6}  z = {:.2}",
        est.mean,
        est.stddev,
        est.z_score(exact)
    );

    let exact = vol_inner_neighbourhood(&body, eps)?;
    let est = mc_inner_volume(&body, eps, samples, seed)?;
    println!(
        "vol(L)   exact {exact:.6}  estimate {:.6} ± {:.6}  z = {:.2}",
        est.mean,
        est.stddev,
        est.z_score(exact)
    );
    Ok(())
}

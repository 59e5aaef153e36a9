//! The box [0,1]×[0,K]: the ratio (vol/per)/In runs from 1/2 at K = 1 up
//! towards 1 as K grows.

use inbody::metrics::{heron_bounds, pancake_family};
use inbody::validate_body;

fn main() -> inbody::Result<()> {
    println!("{:>8} {:>12} {:>12}", "K", "vol/per", "ratio to In");
    for k in [1.0, 2.0, 4.0, 10.0, 100.0, 1000.0] {
        let body = validate_body(&pancake_family(2, k)?)?;
        let r = heron_bounds(&body);
        let ratio = r.volume / r.perimeter;
        println!("{k:>8} {ratio:>12.6} {:>12.6}", ratio / r.inradius);
    }
    Ok(())
}

//! Volume, surface area and inradius of a few bodies, and where the inradius
//! sits between vol/per and n·vol/per.

use inbody::metrics::{heron_bounds, is_circumscribed};
use inbody::shapes::{regular_simplex, standard_simplex, unit_cube};
use inbody::{validate_body, HalfspaceSystem};

fn main() -> inbody::Result<()> {
    let bodies: [(&str, HalfspaceSystem); 4] = [
        ("unit square", unit_cube(2)),
        ("unit cube", unit_cube(3)),
        ("right triangle", standard_simplex(2)),
        ("regular tetrahedron", regular_simplex(3)),
    ];
    println!(
        "{:<20} {:>10} {:>10} {:>10} {:>10} {:>10}  circumscribed",
        "body", "vol", "per", "lower", "In", "upper"
    );
    for (name, h) in bodies {
        let body = validate_body(&h)?;
        let r = heron_bounds(&body);
        let circ = is_circumscribed(&body, 1e-6)?;
        println!(
            "{name:<20} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}  {circ}",
            r.volume, r.perimeter, r.lower, r.inradius, r.upper
        );
    }
    Ok(())
}

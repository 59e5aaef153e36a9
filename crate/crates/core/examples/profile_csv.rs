//! Writes the ε-profile of a triangle as CSV to standard output.

use inbody::neighbourhood::neighbourhood_profile;
use inbody::shapes::standard_simplex;
use inbody::validate_body;

fn main() -> inbody::Result<()> {
    let body = validate_body(&standard_simplex(2))?;
    let profile = neighbourhood_profile(&body, 17)?;
    print!("{}", profile.to_csv());
    eprintln!(
        "worst invariant violation: {:.3e}",
        profile.worst_violation()
    );
    Ok(())
}

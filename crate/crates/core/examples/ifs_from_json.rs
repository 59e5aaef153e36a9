//! Loads a family from the JSON input format and prints its validation
//! report. Usage: `cargo run --example ifs_from_json -- data/cantor_ifs.json`

use inbody::io::IfsInput;
use inbody::projective::validate_ifs;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/parabolic_ifs.json").into());
    let input: IfsInput = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
    let (ifs, seeds) = input.into_parts()?;
    let report = validate_ifs(&ifs, &seeds)?;
    println!(
        "{} maps on the {}-simplex, {} seed holes",
        ifs.len(),
        ifs.n,
        seeds.len()
    );
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

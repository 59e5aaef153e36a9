//! The middle-thirds set written as a projective family on [0,1]: hole
//! series exponent and box-counting estimate, both near log 2 / log 3.

use inbody::projective::{
    box_counting_from_holes, complement_intervals, dyadic_resolutions, exponent_from_holes,
    generate_holes, validate_ifs, ProjectiveIFS,
};

fn main() -> inbody::Result<()> {
    let ifs = ProjectiveIFS::from_rows(
        1,
        &[
            vec![vec![3.0, 2.0], vec![0.0, 1.0]],
            vec![vec![1.0, 0.0], vec![2.0, 3.0]],
        ],
    )?;
    let seeds = complement_intervals(&ifs)?;
    println!("seed hole {:?}", seeds[0].vertices);
    println!("valid: {}", validate_ifs(&ifs, &seeds)?.is_valid());

    let depth = 12;
    let holes = generate_holes(&ifs, &seeds, depth)?;
    let est = exponent_from_holes(&holes, 1, depth, 0.01)?;
    let smallest = holes
        .iter()
        .map(|h| 2.0 * h.inradius)
        .fold(f64::INFINITY, f64::min);
    let bc = box_counting_from_holes(1, &holes, &dyadic_resolutions(1, smallest))?;

    println!("{} holes up to depth {depth}", holes.len());
    println!(
        "hole series exponent {:.5} (bracket {:.4})",
        est.s_star, est.bracket_width
    );
    println!("box counting         {bc:.5}");
    println!("log 2 / log 3        {:.5}", 2f64.ln() / 3f64.ln());
    Ok(())
}

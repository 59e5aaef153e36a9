//! Word-norm series exponent under each matrix norm, next to the hole
//! series exponent, for the parabolic family.

use inbody::projective::{
    complement_intervals, critical_exponent, norm_series_exponent, MatrixNorm, ProjectiveIFS,
};

fn main() -> inbody::Result<()> {
    let ifs = ProjectiveIFS::from_rows(
        1,
        &[
            vec![vec![1.0, 0.0], vec![2.0, 1.0]],
            vec![vec![1.0, 2.0], vec![0.0, 1.0]],
        ],
    )?;
    let seeds = complement_intervals(&ifs)?;
    let depth = 12;
    let holes = critical_exponent(&ifs, &seeds, depth, 0.01)?;
    println!("hole series      {:.4} {:?}", holes.s_star, holes.flags);
    for norm in [
        MatrixNorm::Spectral,
        MatrixNorm::Frobenius,
        MatrixNorm::MaxEntry,
    ] {
        let est = norm_series_exponent(&ifs, depth, 0.01, norm)?;
        println!(
            "{:<16} {:.4} {:?}",
            format!("{norm:?}"),
            est.s_star,
            est.flags
        );
    }
    Ok(())
}

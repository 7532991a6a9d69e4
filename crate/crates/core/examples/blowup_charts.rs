use cadiv::blowup::{charts, discrepancy, strict_transform, Germ};
use cadiv::parse::parse_polynomial;
use cadiv::WeightVector;

fn main() -> cadiv::Result<()> {
    let f = parse_polynomial("x^2 + y^2 + z^3 + x*t^2")?;
    let w = WeightVector::xyzt(&[4, 3, 2, 1])?;
    println!("{f} under {w}");
    for chart in charts(&w)? {
        println!("  {}", strict_transform(&f, &w, &chart)?);
    }
    println!("discrepancy {}", discrepancy(&w, &Germ::Hypersurface(f))?);
    Ok(())
}

use cadiv::atlas::{enumerate_contractions, smooth_census};
use cadiv::parse::parse_polynomial;

fn main() -> cadiv::Result<()> {
    for n in 1..=6 {
        let f = parse_polynomial(&format!("x*y + z^{0} + t^{0}", n + 1))?;
        let c = enumerate_contractions(&f)?;
        println!("n = {n}: {} classes, over the base {}", c.count_local_analytic, c.count_over_base);
    }
    let c = enumerate_contractions(&parse_polynomial("x*y + z^3 + t^6")?)?;
    println!("x*y + z^3 + t^6:");
    for class in &c.classes {
        println!("  {class}");
    }
    println!("  over the base: {}", c.count_over_base);
    let s = smooth_census();
    println!("smooth point: {} classes, {}", s.count_local_analytic, s.generator.unwrap_or_default());
    Ok(())
}

use cadiv::blowup::algebraize;
use cadiv::parse::parse_polynomial;
use cadiv::poly::{vars, xyzt};
use cadiv::weight_maps::JetSubstitution;
use cadiv::WeightVector;

fn main() -> cadiv::Result<()> {
    let f = parse_polynomial("x*y + z^3 + t^6")?;
    let comps = ["x + y*z", "y + x^2", "z + t^2", "t"].map(|s| parse_polynomial(s).unwrap());
    let ys = vars(&["y1", "y2", "y3", "y4"]);
    let psi = JetSubstitution::new(xyzt(), ys.clone(), comps.to_vec(), 6)?;
    let wy = WeightVector::positional(&ys, &[1, 5, 2, 1])?;
    let (gens, weights) = algebraize(&[f], &psi, &wy)?;
    println!("weights {weights}");
    for g in gens {
        println!("  {g}");
    }
    Ok(())
}

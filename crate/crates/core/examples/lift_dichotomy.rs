use cadiv::atlas::{decide_membership, family_witness};
use cadiv::blowup::{lift_check, Germ};
use cadiv::parse::{parse_polynomial, parse_rational};
use cadiv::poly::{vars, Polynomial};
use cadiv::weight_maps::JetSubstitution;
use cadiv::WeightVector;

fn main() -> cadiv::Result<()> {
    let germ = Germ::Hypersurface(parse_polynomial("x*y + z^3 + t^6")?);
    let w = WeightVector::xyzt(&[1, 5, 2, 1])?;
    let class = decide_membership(&germ, &w)?.class().cloned().expect("member");
    let c0 = family_witness(&class, &[parse_rational("1")?])?;
    for c in ["1", "-2", "1/3"] {
        let c1 = family_witness(&class, &[parse_rational(c)?])?;
        let map = c0.inverse()?.then(&c1, c0.jet_order())?;
        println!("Phi_1 vs Phi_{c}: {}", lift_check(&map, &w, &germ)?);
    }

    let xyz = vars(&["x", "y", "z"]);
    let v = |s: &str| Polynomial::var(xyz.clone(), s);
    let shear = JetSubstitution::automorphism(xyz.clone(), &[("z", &v("z")? + &v("x")?)], 4)?
        .with_inverse(vec![v("x")?, v("y")?, &v("z")? - &v("x")?])?;
    let w = WeightVector::positional(&xyz, &[1, 1, 2])?;
    println!("z -> z + x under (1, 1, 2): {}", lift_check(&shear, &w, &Germ::Ambient)?);
    Ok(())
}

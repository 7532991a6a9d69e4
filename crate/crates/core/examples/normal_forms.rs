use cadiv::normal_form::{reduce_to_simple, split_quadratic, weighted_normal_form};
use cadiv::parse::parse_polynomial;
use cadiv::weight_maps::{substitute_jet, verify_weight_respecting};
use cadiv::WeightVector;

fn main() -> cadiv::Result<()> {
    let w = WeightVector::xyzt(&[1, 5, 2, 1])?;
    let f = parse_polynomial("x*y - y^2 + x*y*z + z^3 + t^6 + z^2*t^3")?;

    let split = split_quadratic(&f, &w, ("x", "y"))?;
    println!("split:    {}", split.polynomial);
    let wnf = weighted_normal_form(&f, &w)?;
    println!("weighted: {}", wnf.polynomial);
    println!("  marking {:?}", wnf.marking.iter().map(|(m, c)| format!("{m}: {c}")).collect::<Vec<_>>());

    let back = substitute_jet(&f, &wnf.witness, wnf.jet_order)?;
    assert_eq!(back.truncate(wnf.jet_order), wnf.polynomial.truncate(wnf.jet_order));
    println!("  witness weight-respecting: {}", verify_weight_respecting(&wnf.witness, &w, &w)?.weight_respecting);

    let g = parse_polynomial("x^2 + y^2 + x*y + 2*x*(t^2 + z*t) + y*z*t + z^3 + t^6")?;
    let e6 = reduce_to_simple(&g, &WeightVector::xyzt(&[4, 3, 2, 1])?)?;
    println!("E6 route: {} (unit form {})", e6.polynomial, e6.unit_form);
    Ok(())
}

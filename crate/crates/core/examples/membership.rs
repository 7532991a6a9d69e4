use cadiv::atlas::decide_membership;
use cadiv::blowup::Germ;
use cadiv::parse::parse_polynomial;
use cadiv::poly::vars;
use cadiv::WeightVector;

fn main() -> cadiv::Result<()> {
    let cases: [(&str, &[u32]); 6] = [
        ("x*y + z^2 + t^3", &[1, 5, 3, 2]),
        ("x^2 + y^2 + z^3 + x*t^2", &[4, 3, 2, 1]),
        ("x*y + z^3 + t^6", &[1, 5, 2, 1]),
        ("x*y + z^3 + t^6", &[3, 3, 2, 1]),
        ("x*y + z^3 + t^6", &[2, 4, 2, 1]),
        ("x*y + z^4 + t^4", &[1, 1, 1, 1]),
    ];
    for (src, ws) in cases {
        let germ = Germ::Hypersurface(parse_polynomial(src)?);
        let m = decide_membership(&germ, &WeightVector::xyzt(ws)?)?;
        println!("{src} {ws:?}: {m}");
    }
    let w = WeightVector::positional(&vars(&["x", "y", "z"]), &[1, 2, 3])?;
    println!("smooth (1, 2, 3): {}", decide_membership(&Germ::Ambient, &w)?);
    let w = WeightVector::positional(&vars(&["x", "y", "z"]), &[1, 2, 4])?;
    println!("smooth (1, 2, 4): {}", decide_membership(&Germ::Ambient, &w)?);
    Ok(())
}

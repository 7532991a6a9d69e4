use cadiv::classifier::classify;
use cadiv::parse::parse_polynomial;

fn main() -> cadiv::Result<()> {
    for src in [
        "x*y + z^2 + t^3",
        "x^2 + y^2 + z^2*t + t^4",
        "x^2 + y^2 + z^3 + x*t^2",
        "x^2 + y^2 + z^3 + t^5",
        "x*y + z^3 + t^6",
        "x*y + (z + t^2)^4 + t^9",
        "x + y^2",
    ] {
        let r = classify(&parse_polynomial(src)?)?;
        let mu = r.milnor_number.map_or("-".into(), |m| m.to_string());
        println!("{src:32} {:12} mu = {mu:3} corank {}", r.type_tag.to_string(), r.corank);
    }
    Ok(())
}

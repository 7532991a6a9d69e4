use cadiv::local_algebra::{determinacy_truncate, milnor_data};
use cadiv::parse::parse_polynomial;

fn main() -> cadiv::Result<()> {
    for src in ["x*y + z^2 + t^7", "x*y + z^3 + t^6", "x*y + z^4 + t^8", "x^2 + y^2 + z^3 + z*t^3"] {
        let f = parse_polynomial(src)?;
        let data = milnor_data(&f)?;
        println!("{src}: mu = {}, stable from degree {}", data.milnor_number, data.stabilization_order);
        println!("  basis: {}", data.basis_strings().join(", "));
    }
    let f = parse_polynomial("x*y + z^2 + t^3 + z^5*t + x^7")?;
    println!("4-jet of {f}: {}", determinacy_truncate(&f, 4)?);
    match determinacy_truncate(&parse_polynomial("x*y + z^3 + t^6")?, 6) {
        Ok(_) => unreachable!(),
        Err(e) => println!("refused: {e}"),
    }
    Ok(())
}

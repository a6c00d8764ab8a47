//! For degree-2 primes of `x³ − x − 1`, the smallest odd power that has a
//! generator trivial in the ray group of modulus `8·31` (signs at the real
//! place exempted).

use rankgrowth::ellcurve::EllipticCurve;
use rankgrowth::numfield::{
    class_group, cubic_field, is_principal_with_congruence, modulus_for_discriminant, signed_places, Ideal, Place,
    PrincipalityOptions, RayGroup,
};

fn main() -> rankgrowth::Result<()> {
    let k = cubic_field([0, -1, -1])?;
    let e = EllipticCurve::new(1, 1)?;
    let cg = class_group(&k)?;
    let ray = RayGroup::new(&k, modulus_for_discriminant(e.discriminant()), signed_places(&k, Some(Place::Real(0))))?;
    println!("modulus {}, ray group order {}", ray.modulus, ray.order());
    for q in k.degree2_primes(20_000) {
        let r = is_principal_with_congruence(&k, &cg, &ray, &Ideal::prime(&k, &q), &PrincipalityOptions::default())?;
        let gen = r.generator.as_ref().map(|g| {
            let b: Vec<String> = g.base.iter().map(|x| x.to_string()).collect();
            format!("({})^{} · units{:?}", b.join(", "), g.power, g.unit_exponents)
        });
        println!("p = {:>3}: {:?}, h = {:?} {}", q.p, r.verdict, r.h, gen.unwrap_or_default());
    }
    Ok(())
}

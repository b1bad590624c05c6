use std::sync::Arc;
use filtreg::ideal::Ideal;
use filtreg::poly::Polynomial;
use filtreg::ring::PolyRing;

fn main() {
    let r: Arc<PolyRing> = PolyRing::new(32003, &["x", "y"]).unwrap();
    let i = Ideal::parse(&r, &["x^2", "x*y", "y^3"]).unwrap();
    let z1 = Polynomial::parse(&r, "x^2 + 2x*y + 3y^3").unwrap();
    let z2 = Polynomial::parse(&r, "5x^2 + 7x*y + 11y^3").unwrap();
    let q = Ideal::new(&r, vec![z1, z2]);
    let mut power = Ideal::unit(&r);
    for n in 0..10 {
        let lhs = power.product(&i);
        let rhs = q.product(&power);
        println!("n={n}: I^{}==QI^{}: {}", n + 1, n, lhs.equals(&rhs));
        power = power.product(&i);
    }
}

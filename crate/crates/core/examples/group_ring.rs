//! Units of Z[Z/5] and Whitehead classes modulo ±t^k.

use simple_torsion::groupring::{wh_equal, GroupRingElement, WhiteheadClass};

fn main() {
    let u = GroupRingElement::from_i64s(5, &[-1, 1, 0, 0, 1]);
    let v = u.inverse().unwrap();
    println!("u = {u}\nu^-1 = {v}\nu * u^-1 = {}", u.mul(&v).unwrap());
    println!("u Wh-equal to 1: {}", wh_equal(&u, &GroupRingElement::one(5)).unwrap());
    let shifted = u.times_trivial_unit(3, true);
    println!("-t^3 u = {shifted}, Wh-equal to u: {}", wh_equal(&u, &shifted).unwrap());
    let class = WhiteheadClass::new(u).unwrap();
    println!("[u] = {class}, [u]^2 = {}", class.mul(&class).unwrap());
}

//! Finite-field construction and exact arithmetic.
//!
//! This example demonstrates:
//! - Deterministic construction of GF(q) for prime powers (canonical modulus)
//! - Element arithmetic: add, mul, inverse, characteristic
//! - Full element enumeration in code order
//!
//! Run with: cargo run --example field_arithmetic

use chshq::field::FieldSpec;

fn main() {
    println!("=== Prime field GF(7) ===");
    let f7 = FieldSpec::new(7).unwrap();
    println!("p = {}, k = {}, q = {}", f7.p(), f7.k(), f7.q());
    println!("3 + 5 = {}", f7.add(3, 5));
    println!("3 * 5 = {}", f7.mul(3, 5));
    println!("3^-1  = {} (3 * {} = {})", f7.inv(3).unwrap(), f7.inv(3).unwrap(), f7.mul(3, f7.inv(3).unwrap()));
    println!();

    println!("=== Extension field GF(4) ===");
    let f4 = FieldSpec::new(4).unwrap();
    println!(
        "modulus coefficients (constant first, leading 1 omitted): {:?}",
        f4.modulus()
    );
    println!("element codes are base-p digit vectors: 2 = x, 3 = x + 1");
    println!("2 * 2 = {} (x * x = x^2 = x + 1 under x^2+x+1)", f4.mul(2, 2));
    println!("2 * 3 = {} (x(x+1) = x^2 + x = 1)", f4.mul(2, 3));
    println!();

    println!("=== Determinism ===");
    let again = FieldSpec::new(4).unwrap();
    println!(
        "two constructions of GF(4) agree: {}",
        f4 == again && f4.modulus() == again.modulus()
    );
    println!();

    println!("=== Enumeration and axioms over GF(9) ===");
    let f9 = FieldSpec::new(9).unwrap();
    let codes: Vec<u64> = f9.elements().map(|e| e.code()).collect();
    println!("elements: {codes:?}");
    println!("modulus: {:?} (x^2 + 1 over GF(3))", f9.modulus());
    // Characteristic: adding 1 three times returns to 0.
    let mut acc = 0;
    for _ in 0..f9.p() {
        acc = f9.add(acc, 1);
    }
    println!("1 added p = {} times gives {}", f9.p(), acc);
    // Every nonzero element has an inverse.
    let all_invertible = (1..f9.q()).all(|a| f9.mul(a, f9.inv(a).unwrap()) == 1);
    println!("all nonzero elements invert: {all_invertible}");
    println!();

    println!("=== Rejections ===");
    println!("GF(6):     {:?}", FieldSpec::new(6).unwrap_err());
    println!("GF(16384): {:?}", FieldSpec::new(16384).unwrap_err());
}

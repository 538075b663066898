//! Permutation basics: parsing, composition order, conjugation, commutators
//! and group orders.

use origami_forge::perm::{group_order, parse_permutation, StabilizerChain};
use origami_forge::Permutation;

fn main() -> anyhow::Result<()> {
    let sigma = Permutation::standard_cycle(5);
    let tau = parse_permutation("(1,3,4,2,5)", 5)?;
    println!("sigma         = {}", sigma);
    println!(
        "tau           = {}  one-line {}",
        tau,
        tau.to_one_line_string()
    );

    // left to right: apply tau first, then sigma
    let product = tau.compose(&sigma)?;
    println!("tau sigma     = {}  (1 -> {})", product, product.apply(1));
    println!("tau^-1        = {}", tau.inverse());
    println!("tau^3         = {}", tau.pow(3));
    println!("sigma^-1 tau sigma = {}", tau.conjugate(&sigma)?);

    let comm = tau.commutator(&sigma)?;
    println!(
        "[tau, sigma]  = {}  cycle type {:?}",
        comm,
        comm.cycle_type()
    );

    let order = group_order(&[sigma.clone(), tau.clone()])?;
    println!("|<sigma, tau>| = {}", order);

    let m11 = [
        Permutation::standard_cycle(11),
        parse_permutation("(3,7,11,8)(4,10,5,6)", 11)?,
    ];
    let chain = StabilizerChain::new(&m11)?;
    println!(
        "M11: order {} base {:?} orbit lengths {:?}",
        chain.order(),
        chain.base(),
        chain.orbit_lengths()
    );

    match parse_permutation("(1,2)(1,3)", 3) {
        Ok(p) => println!("unexpected: {}", p),
        Err(e) => println!("parse error: {}", e),
    }
    Ok(())
}

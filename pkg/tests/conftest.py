import pytest

from hopfk import (
    build_function_hopf,
    build_kac_paljutkin,
    cyclic_group,
    mod_hom,
    sign_hom_s3,
    symmetric_group,
    trivial_hom,
)


@pytest.fixture(scope="session")
def kp():
    return build_kac_paljutkin()


@pytest.fixture(scope="session")
def fs3():
    return build_function_hopf(sign_hom_s3())


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def oracle_homs():
    return [
        ("sign-s3", sign_hom_s3()),
        ("mod2-z4", mod_hom(4, 2)),
        ("trivial-z2", trivial_hom(cyclic_group(2))),
        ("trivial-z3", trivial_hom(cyclic_group(3))),
        ("trivial-z5", trivial_hom(cyclic_group(5))),
    ]

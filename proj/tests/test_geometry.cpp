// Copyright 2026 The spinmur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "spinmur/geometry.hpp"
#include "spinmur/rng.hpp"

using namespace spinmur;

TEST_CASE("vector algebra basics", "[geometry]") {
    Vec3 a{1, 2, 3}, b{4, -5, 6};
    CHECK(a.dot(b) == 4 - 10 + 18);
    CHECK(Vec3{3, 4, 0}.norm() == Catch::Approx(5.0).margin(1e-15));
    Vec3 c = a.cross(b);
    CHECK(c.dot(a) == Catch::Approx(0.0).margin(1e-12));
    CHECK(c.dot(b) == Catch::Approx(0.0).margin(1e-12));
    Vec3 ez = Vec3{1, 0, 0}.cross(Vec3{0, 1, 0});
    CHECK(ez.x == 0.0);
    CHECK(ez.y == 0.0);
    CHECK(ez.z == 1.0);
    CHECK((2.0 * a).x == 2.0);
    CHECK((a - a).norm() == 0.0);
    CHECK(a[0] == 1.0);
    CHECK(a[2] == 3.0);
    CHECK((-a).y == -2.0);
}

TEST_CASE("normalized vector and zero-vector rejection", "[geometry]") {
    Vec3 u = Vec3{0, 3, 4}.normalized();
    CHECK(u.norm() == Catch::Approx(1.0).margin(1e-15));
    CHECK(u.y == Catch::Approx(0.6).margin(1e-15));
    CHECK_THROWS_AS((Vec3{0, 0, 0}.normalized()), std::invalid_argument);
}

TEST_CASE("axis-angle rotation maps the frame as expected", "[geometry]") {
    Mat3 r = axis_angle_rotation({0, 0, 1}, M_PI / 2);
    Vec3 image = r.apply({1, 0, 0});
    CHECK(image.x == Catch::Approx(0.0).margin(1e-15));
    CHECK(image.y == Catch::Approx(1.0).margin(1e-15));
    CHECK(image.z == Catch::Approx(0.0).margin(1e-15));
    CHECK(r.det() == Catch::Approx(1.0).margin(1e-14));
    CHECK(is_rotation(r));
    CHECK(rotation_residual(r) < 1e-14);
}

TEST_CASE("rotations compose along a fixed axis", "[geometry]") {
    SplitMix64 rng(11);
    for (int i = 0; i < 20; ++i) {
        Vec3 axis = rng.unit_vector();
        double t1 = rng.uniform(0.0, 3.0), t2 = rng.uniform(0.0, 3.0);
        Mat3 lhs = axis_angle_rotation(axis, t1).multiply(axis_angle_rotation(axis, t2));
        Mat3 rhs = axis_angle_rotation(axis, t1 + t2);
        Vec3 v = rng.ball_point();
        CHECK((lhs.apply(v) - rhs.apply(v)).norm() < 1e-14);
    }
}

TEST_CASE("rotations preserve inner products", "[geometry]") {
    SplitMix64 rng(12);
    for (int i = 0; i < 50; ++i) {
        Mat3 r = axis_angle_rotation(rng.unit_vector(), rng.uniform(-10.0, 10.0));
        Vec3 a = rng.ball_point(), b = rng.ball_point();
        CHECK(r.apply(a).dot(r.apply(b)) == Catch::Approx(a.dot(b)).margin(1e-13));
        CHECK(is_rotation(r));
    }
}

TEST_CASE("non-rotations are detected", "[geometry]") {
    Mat3 scale = Mat3::identity();
    scale.m[0][0] = 2.0;
    CHECK_FALSE(is_rotation(scale));
    Mat3 reflect = Mat3::identity();
    reflect.m[2][2] = -1.0;  // det = -1, orthogonal but orientation-reversing
    CHECK_FALSE(is_rotation(reflect));
}

TEST_CASE("spherical coordinates produce unit directions", "[geometry]") {
    Vec3 pole = spherical_direction(0.0, 1.3);
    CHECK(pole.z == Catch::Approx(1.0).margin(1e-15));
    Vec3 equator = spherical_direction(M_PI / 2, 0.0);
    CHECK(equator.x == Catch::Approx(1.0).margin(1e-15));
    CHECK(equator.z == Catch::Approx(0.0).margin(1e-15));
    for (double theta : {0.3, 1.1, 2.9}) {
        for (double phi : {0.0, 2.0, 5.5}) {
            CHECK(spherical_direction(theta, phi).norm() == Catch::Approx(1.0).margin(1e-15));
        }
    }
}

TEST_CASE("matrix transpose inverts rotations", "[geometry]") {
    Mat3 r = axis_angle_rotation({1, 2, -1}, 0.77);
    Mat3 should_be_identity = r.transpose().multiply(r);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(should_be_identity.m[i][j] == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-15));
        }
    }
}

#!/usr/bin/env python3
"""
Smoke test script for the suite API.
Run this after starting the server to check the endpoints against a live instance.
"""
import requests

BASE_URL = "http://localhost:8000/api/v1"


def test_api():
    """Exercise the health, fixture and suite endpoints."""
    print("🧪 Testing EK Quantisation API...")

    # Test health check
    print("\n1. Testing health check...")
    try:
        response = requests.get(f"{BASE_URL}/health/")
        if response.status_code == 200:
            print("✅ Health check passed")
        else:
            print(f"❌ Health check failed: {response.status_code}")
    except Exception as e:
        print(f"❌ Health check error: {e}")
        return

    # Test fixture list
    print("\n2. Testing fixture list...")
    fixtures = []
    try:
        response = requests.get(f"{BASE_URL}/fixtures/")
        if response.status_code == 200:
            fixtures = response.json()
            print(f"✅ Found {len(fixtures)} fixtures")
            for row in fixtures:
                print(f"   {row['name']}: {row['kind']} of dimension {row['dim']}")
        else:
            print(f"❌ Fixture list failed: {response.status_code}")
    except Exception as e:
        print(f"❌ Fixture list error: {e}")

    # Run the validate suite on every fixture
    print("\n3. Testing validate suite...")
    for row in fixtures:
        try:
            response = requests.post(
                f"{BASE_URL}/suites/run/",
                json={"suite": "validate", "fixture": row['name'], "timings": True},
            )
            if response.status_code == 200:
                report = response.json()
                print(f"✅ {row['name']}: {len(report['checks'])} checks passed")
            elif response.status_code == 422:
                failed = [c['name'] for c in response.json()['checks'] if c['status'] == 'fail']
                print(f"❌ {row['name']}: failed {', '.join(failed)}")
            else:
                print(f"❌ {row['name']}: {response.status_code} {response.text}")
        except Exception as e:
            print(f"❌ {row['name']} error: {e}")

    # Bad requests
    print("\n4. Testing error responses...")
    try:
        response = requests.post(f"{BASE_URL}/suites/run/", json={"suite": "validate", "fixture": "missing"})
        print(f"{'✅' if response.status_code == 404 else '❌'} Unknown fixture: {response.status_code}")
        response = requests.post(f"{BASE_URL}/suites/run/", json={"suite": "radford", "fixture": "z2"})
        print(f"{'✅' if response.status_code == 400 else '❌'} Inapplicable suite: {response.status_code}")
    except Exception as e:
        print(f"❌ Error response test error: {e}")

    print("\n🎉 API testing completed!")
    print("\n📚 API Documentation available at:")
    print("   - Swagger UI: http://localhost:8000/swagger/")
    print("   - ReDoc: http://localhost:8000/redoc/")


if __name__ == "__main__":
    test_api()

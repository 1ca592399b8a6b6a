"""
URL configuration for the quantisation app.
"""
from django.urls import path
from . import views

urlpatterns = [
    path('fixtures/', views.FixtureListView.as_view(), name='fixture-list'),
    path('suites/run/', views.SuiteRunView.as_view(), name='suite-run'),
    path('health/', views.health_check, name='health-check'),
]

"""
Views for the quantisation suite API.
"""
import logging

from django.utils import timezone
from drf_yasg import openapi
from drf_yasg.utils import swagger_auto_schema
from rest_framework import generics, status
from rest_framework.decorators import api_view
from rest_framework.response import Response
from rest_framework.views import APIView

from .exceptions import QuantisationError, UnknownObject
from .fixtures import list_fixtures, load_fixture
from .serializers import FixtureSummarySerializer, SuiteRunSerializer
from .suites import SuiteParams, run_suite

logger = logging.getLogger(__name__)


class FixtureListView(generics.ListAPIView):
    """
    List the shipped fixtures with their kind and dimension.

    GET /api/v1/fixtures/
    """
    serializer_class = FixtureSummarySerializer
    pagination_class = None

    def get_queryset(self):
        return list_fixtures()


class SuiteRunView(APIView):
    """
    Run one verification suite on one fixture.

    POST /api/v1/suites/run/
    """

    @swagger_auto_schema(
        operation_description="Run a verification suite on a fixture and return its report",
        request_body=SuiteRunSerializer,
        responses={
            200: openapi.Response('Every check passed'),
            400: 'Bad Request - Invalid parameters or fixture',
            404: 'Not Found - Unknown fixture',
            422: 'Unprocessable - At least one check failed',
        }
    )
    def post(self, request, *args, **kwargs):
        serializer = SuiteRunSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
        data = serializer.validated_data
        params = SuiteParams(
            degree_cap=data.get('degree_cap'),
            hbar_order=data.get('hbar_order'),
            seed=data.get('seed'),
        )
        try:
            obj = load_fixture(data['fixture'])
            report = run_suite(data['suite'], obj, params)
        except UnknownObject as e:
            return Response({'error': str(e)}, status=status.HTTP_404_NOT_FOUND)
        except QuantisationError as e:
            logger.warning("suite %s on %s: %s", data['suite'], data['fixture'], e)
            return Response({'error': str(e)}, status=status.HTTP_400_BAD_REQUEST)

        body = report.as_dict(data['timings'])
        body['fixture'] = data['fixture']
        return Response(body, status=status.HTTP_200_OK if report.passed else status.HTTP_422_UNPROCESSABLE_ENTITY)


@api_view(['GET'])
def health_check(request):
    """
    Health check endpoint.

    GET /api/v1/health/
    """
    return Response({
        'status': 'healthy',
        'timestamp': timezone.now().isoformat(),
        'service': 'EK Quantisation API'
    })

from django.apps import AppConfig


class MatroidsConfig(AppConfig):
    name = 'Matroids'
    verbose_name = 'Matroid kernel'

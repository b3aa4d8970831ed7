from django.apps import AppConfig


class TheoremsConfig(AppConfig):
    name = 'Theorems'

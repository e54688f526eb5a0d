from django.apps import AppConfig


class ExperimentosConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.experimentos'
    verbose_name = "Experimentos de agendamiento"

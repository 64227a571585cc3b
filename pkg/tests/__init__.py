# Тесты для пакета graph_ascent

int cwe401_bug_second_buffer_m_main(int c) {
  char *a = malloc(16);
  char *b = malloc(16);
  a[0] = 1;
  b[0] = 2;
  free(a);
  return 0;
}
